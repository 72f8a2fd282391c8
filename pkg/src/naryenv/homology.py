"""The n-ary chain complex C^k = A^{(x)(k(n-1)+1)} with alternating face maps.

Letters of a chain are labelled a_0 .. a_{k(n-1)}; the face map at position i
(0 <= i <= (k-1)(n-1)) replaces a_i .. a_{i+n-1} by their product and enters
the boundary with sign (-1)^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from .envelope import Word, WordVector, contract, words
from .exactlin import Matrix, rank
from .guards import size_guard
from .nary_core import NAryAlgebra

HOMOLOGY_GUARD = 5 * 10**6

CONVENTION = "letters a_0..a_{k(n-1)}, faces i = 0..(k-1)(n-1), sign (-1)^i"


class NotAComplexError(ValueError):
    pass


def chain_length(n: int, k: int) -> int:
    return k * (n - 1) + 1


def chain_dim(A: NAryAlgebra, k: int) -> int:
    return A.dim ** chain_length(A.n, k)


def word_index(w: Word, dim: int) -> int:
    idx = 0
    for letter in w:
        idx = idx * dim + letter
    return idx


def face_map(A: NAryAlgebra, k: int, i: int, w: Word) -> WordVector:
    if k < 1:
        raise ValueError("face maps start at level 1")
    if len(w) != chain_length(A.n, k):
        raise ValueError(f"chain of level {k} has length {chain_length(A.n, k)}, got {len(w)}")
    if not 0 <= i <= (k - 1) * (A.n - 1):
        raise ValueError(f"face position {i} out of range 0..{(k - 1) * (A.n - 1)}")
    return contract(A, {tuple(w): 1}, i)


def boundary_matrix(A: NAryAlgebra, k: int) -> Matrix:
    size_guard(chain_dim(A, k), HOMOLOGY_GUARD, f"boundary d_{k}")
    rows, cols = chain_dim(A, k - 1), chain_dim(A, k)
    out = Matrix(rows, cols)
    top = (k - 1) * (A.n - 1)
    for w in words(A.dim, chain_length(A.n, k)):
        col = word_index(w, A.dim)
        for i in range(top + 1):
            sign = -1 if i % 2 else 1
            for v, c in contract(A, {w: 1}, i).items():
                r = word_index(v, A.dim)
                out[r, col] = out[r, col] + sign * c
    return out


@dataclass
class DSquaredReport:
    zero: Dict[int, bool]
    nonzero_counts: Dict[int, int]
    convention: str = CONVENTION

    @property
    def all_zero(self) -> bool:
        return all(self.zero.values())

    @property
    def max_nonzero_entry_count(self) -> int:
        return max(self.nonzero_counts.values(), default=0)


@dataclass
class ChainComplex:
    algebra: NAryAlgebra
    k_max: int
    boundaries: Dict[int, Matrix] = field(repr=False)

    def dims(self) -> List[int]:
        return [chain_dim(self.algebra, k) for k in range(self.k_max + 1)]


def chain_complex(A: NAryAlgebra, k_max: int) -> ChainComplex:
    return ChainComplex(A, k_max, {k: boundary_matrix(A, k) for k in range(1, k_max + 1)})


def check_d_squared(A: NAryAlgebra, k_max: int, complex_: ChainComplex = None) -> DSquaredReport:
    """d_k d_{k+1} for 1 <= k < k_max, computed exactly; nothing is assumed."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    cc = complex_ or chain_complex(A, k_max)
    zero, counts = {}, {}
    for k in range(1, k_max):
        prod = cc.boundaries[k] @ cc.boundaries[k + 1]
        counts[k] = prod.nnz()
        zero[k] = counts[k] == 0
    return DSquaredReport(zero, counts)


def homology_ranks(A: NAryAlgebra, k_max: int) -> List[int]:
    """[h_0, ..., h_{k_max-1}] with h_k = dim ker d_k - rank d_{k+1} (d_0 = 0)."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    cc = chain_complex(A, k_max)
    report = check_d_squared(A, k_max, cc) if k_max >= 2 else None
    if report is not None and not report.all_zero:
        bad = [k for k, z in report.zero.items() if not z]
        raise NotAComplexError(f"d_k d_(k+1) != 0 for k in {bad}")
    ranks = {k: rank(m) for k, m in cc.boundaries.items()}
    ranks[0] = 0
    return [chain_dim(A, k) - ranks[k] - ranks[k + 1] for k in range(k_max)]
