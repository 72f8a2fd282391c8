"""n-ary associative algebras and semigroups with their universal graded envelopes."""

from .exactlin import OMEGA, QW, EchelonBasis, Matrix, in_span, quotient_basis, rank
from .nary_core import (NAryAlgebra, check_associativity, exterior_odd, is_j_commutative, matrix_algebra,
                        multiply, nary_from_binary, truncated_poly_nary)
from .envelope import build_envelope, ideal_closure, quotient_envelope, reduce_word, relation_space
from .graded import GradedAlgebra, exterior_graded

__version__ = "0.1.0"
