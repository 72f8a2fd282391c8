"""Finite-dimensional n-ary algebras given by structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exactlin import QW, Scalar, SparseVec, to_field, vec_axpy
from .guards import size_guard

ASSOC_GUARD = 10**8

Vector = Dict[int, Scalar]


class NotAssociativeError(ValueError):
    pass


@dataclass
class NAryAlgebra:
    """Structure constants ``table[(i1, ..., in)] = {k: c}`` on a finite basis.

    Absent tuples are the zero product. ``generators`` designates a
    subspace of basis indices (defaults to the whole basis).
    """

    name: str
    n: int
    labels: List[str]
    table: Dict[Tuple[int, ...], Vector]
    field: str = "Q"
    generators: Optional[List[int]] = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("arity must be at least 2")
        if not self.labels:
            raise ValueError("dimension must be at least 1")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate basis labels in {self.name}")
        clean: Dict[Tuple[int, ...], Vector] = {}
        for key, vec in self.table.items():
            key = tuple(key)
            if len(key) != self.n or not all(0 <= i < self.dim for i in key):
                raise ValueError(f"bad structure-constant index {key}")
            v = {}
            for k, c in vec.items():
                if not 0 <= k < self.dim:
                    raise ValueError(f"bad output index {k}")
                c = to_field(c, self.field)
                if c:
                    v[k] = c
            if v:
                clean[key] = v
        self.table = clean
        if self.generators is None:
            self.generators = list(range(self.dim))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r} in {self.name}") from None

    def basis_product(self, idx: Sequence[int]) -> Vector:
        return self.table.get(tuple(idx), {})

    def scalar(self, x) -> Scalar:
        return to_field(x, self.field)


def basis_vector(i: int) -> Vector:
    return {i: Fraction(1)}


def multiply(A: NAryAlgebra, *vectors: Mapping[int, Scalar]) -> Vector:
    """n-linear extension of the structure constants."""
    if len(vectors) != A.n:
        raise TypeError(f"{A.name} is {A.n}-ary, got {len(vectors)} arguments")
    out: Vector = {}
    supports = [sorted(v.items()) for v in vectors]
    for combo in itertools.product(*supports):
        idx = tuple(i for i, _ in combo)
        prod = A.table.get(idx)
        if not prod:
            continue
        coef = 1
        for _, c in combo:
            coef = coef * c
        vec_axpy(out, coef, prod)
    return out


def _compose(A: NAryAlgebra, word: Tuple[int, ...], pos: int) -> Vector:
    """m applied at ``pos`` then m applied to the resulting n letters."""
    inner = A.table.get(word[pos:pos + A.n])
    out: Vector = {}
    if not inner:
        return out
    head, tail = word[:pos], word[pos + A.n:]
    for k, c in inner.items():
        outer = A.table.get(head + (k,) + tail)
        if outer:
            vec_axpy(out, c, outer)
    return out


@dataclass
class AssocReport:
    passed: bool
    first_violation: Optional[Tuple[Tuple[int, ...], int, int]] = None
    checked: int = 0

    def __bool__(self):
        return self.passed


def check_associativity(A: NAryAlgebra) -> AssocReport:
    """Exhaustive check that all n positions of the inner product agree.

    Witness positions are 1-based ``(i, j)`` with ``i < j``; the first
    violation in lexicographic tuple order is reported.
    """
    n, dim = A.n, A.dim
    size_guard(dim ** (2 * n - 1), ASSOC_GUARD, "associativity check")
    checked = 0
    for word in itertools.product(range(dim), repeat=2 * n - 1):
        checked += 1
        ref = _compose(A, word, 0)
        for pos in range(1, n):
            if _compose(A, word, pos) != ref:
                return AssocReport(False, (word, 1, pos + 1), checked)
    return AssocReport(True, None, checked)


# ---------------------------------------------------------------------------
# builders


def binary_algebra(name: str, labels: List[str], table, field: str = "Q") -> NAryAlgebra:
    return NAryAlgebra(name, 2, list(labels), dict(table), field)


def matrix_algebra(size: int, field: str = "Q") -> NAryAlgebra:
    """M_size as a binary algebra on the matrix units ``E{i}{j}``."""
    units = [(i, j) for i in range(size) for j in range(size)]
    labels = [f"E{i + 1}{j + 1}" for i, j in units]
    table = {}
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                table[(a, b)] = {units.index((i, l)): Fraction(1)}
    return NAryAlgebra(f"M{size}", 2, labels, table, field)


def rationals() -> NAryAlgebra:
    return NAryAlgebra("Q", 2, ["e"], {(0, 0): {0: Fraction(1)}})


def zero_algebra(dim: int, n: int, name: str = "zero") -> NAryAlgebra:
    return NAryAlgebra(name, n, [f"z{i + 1}" for i in range(dim)], {})


def nary_from_binary(B: NAryAlgebra, n: int) -> NAryAlgebra:
    """n-ary product a1(a2(...an)) of an associative binary algebra."""
    if B.n != 2:
        raise ValueError("source must be a binary algebra")
    if not check_associativity(B):
        raise NotAssociativeError(f"{B.name} is not associative")
    if n < 2:
        raise ValueError("arity must be at least 2")
    table = {}
    for idx in itertools.product(range(B.dim), repeat=n):
        acc: Vector = {idx[-1]: Fraction(1)}
        for a in reversed(idx[:-1]):
            nxt: Vector = {}
            for k, c in acc.items():
                vec_axpy(nxt, c, B.basis_product((a, k)))
            acc = nxt
            if not acc:
                break
        if acc:
            table[idx] = acc
    return NAryAlgebra(f"{B.name}^({n})", n, list(B.labels), table, B.field)


def _wedge(S: Tuple[int, ...], T: Tuple[int, ...]):
    if set(S) & set(T):
        return 0, ()
    inversions = sum(1 for s in S for t in T if s > t)
    return (-1) ** inversions, tuple(sorted(S + T))


def _monomial_label(mono: Tuple[int, ...], N: int) -> str:
    if not mono:
        return "1"
    if N < 10:
        return "e" + "".join(str(i) for i in mono)
    return "e" + "_".join(str(i) for i in mono)


def exterior_monomials(N: int, parity: Optional[int] = None) -> List[Tuple[int, ...]]:
    monos = []
    for deg in range(N + 1):
        if parity is not None and deg % 2 != parity:
            continue
        monos.extend(itertools.combinations(range(1, N + 1), deg))
    return monos


def wedge_monomials(*monos: Tuple[int, ...]):
    """Sign and sorted support of a wedge of monomials (sign 0 if it vanishes)."""
    sign, acc = 1, ()
    for m in monos:
        s, acc = _wedge(acc, m)
        sign *= s
        if not sign:
            return 0, ()
    return sign, acc


def exterior_odd(N: int) -> NAryAlgebra:
    """Odd part of the exterior algebra on N generators, ternary wedge product."""
    if N < 1:
        raise ValueError("N must be at least 1")
    monos = exterior_monomials(N, parity=1)
    pos = {m: i for i, m in enumerate(monos)}
    table = {}
    for idx in itertools.product(range(len(monos)), repeat=3):
        sign, res = wedge_monomials(*(monos[i] for i in idx))
        if sign:
            table[idx] = {pos[res]: Fraction(sign)}
    labels = [_monomial_label(m, N) for m in monos]
    gens = [i for i, m in enumerate(monos) if len(m) == 1]
    return NAryAlgebra(f"exterior_odd({N})", 3, labels, table, "Q", gens)


def truncated_poly_nary(n: int, t: int) -> NAryAlgebra:
    """Span of x^d, d = 1 mod n-1, d < t, inside Q[x]/(x^t) with n-fold multiplication."""
    if n < 2 or t < n:
        raise ValueError("need n >= 2 and t >= n")
    degrees = [d for d in range(1, t) if (d - 1) % (n - 1) == 0]
    pos = {d: i for i, d in enumerate(degrees)}
    table = {}
    for idx in itertools.product(range(len(degrees)), repeat=n):
        total = sum(degrees[i] for i in idx)
        if total < t:
            table[idx] = {pos[total]: Fraction(1)}
    labels = ["x" if d == 1 else f"x^{d}" for d in degrees]
    return NAryAlgebra(f"truncated_poly({n},{t})", n, labels, table)


def perturb(A: NAryAlgebra, key: Tuple[int, ...], out: int, delta=1) -> NAryAlgebra:
    table = {k: dict(v) for k, v in A.table.items()}
    vec = table.setdefault(tuple(key), {})
    vec[out] = vec.get(out, 0) + A.scalar(delta)
    return NAryAlgebra(A.name + "*", A.n, list(A.labels), table, A.field, list(A.generators))


# ---------------------------------------------------------------------------
# j-commutativity


def is_j_commutative(A: NAryAlgebra, j) -> bool:
    """m(a,b,c) = j m(b,c,a) = j^2 m(c,a,b) on all basis triples."""
    if A.n != 3:
        raise ValueError("j-commutativity is defined for ternary algebras")
    jq = j if isinstance(j, QW) else QW(j)
    if jq ** 3 != 1:
        raise ValueError(f"{j} is not a cube root of unity")
    j2 = jq * jq
    for a, b, c in itertools.product(range(A.dim), repeat=3):
        abc = A.basis_product((a, b, c))
        bca = A.basis_product((b, c, a))
        cab = A.basis_product((c, a, b))
        for k in set(abc) | set(bca) | set(cab):
            lhs = QW(0) + abc.get(k, 0)
            if lhs != jq * bca.get(k, 0) or lhs != j2 * cab.get(k, 0):
                return False
    return True
