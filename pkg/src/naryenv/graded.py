"""Z_{n-1}-graded associative algebras with explicit per-degree bases.

Degrees live in ``1..modulus``; ``modulus`` itself plays the role of the
zero class, so the product of degrees d and e has degree
``((d + e - 1) % modulus) + 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .exactlin import Scalar, to_field, vec_axpy
from .nary_core import NAryAlgebra, exterior_monomials, wedge_monomials

Vector = Dict[int, Scalar]


def degree_product(d: int, e: int, modulus: int) -> int:
    return ((d + e - 1) % modulus) + 1


def word_degree(length: int, modulus: int) -> int:
    return ((length - 1) % modulus) + 1


@dataclass
class GradedAlgebra:
    """``table[(d, i, e, j)] = {k: c}``: basis i of degree d times basis j of degree e."""

    name: str
    modulus: int
    labels: Dict[int, List[str]]
    table: Dict[Tuple[int, int, int, int], Vector]
    field: str = "Q"
    embedding: Optional[List[Vector]] = None  # images of a source algebra's basis in degree 1

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        for d in range(1, self.modulus + 1):
            self.labels.setdefault(d, [])
        if set(self.labels) != set(range(1, self.modulus + 1)):
            raise ValueError(f"degrees must be 1..{self.modulus}")
        clean = {}
        for (d, i, e, j), vec in self.table.items():
            if i >= self.dim(d) or j >= self.dim(e):
                raise ValueError(f"bad product index {(d, i, e, j)}")
            v = {}
            for k, c in vec.items():
                if k >= self.dim(self.degmul(d, e)):
                    raise ValueError(f"product {(d, i, e, j)} leaves its degree")
                c = to_field(c, self.field)
                if c:
                    v[k] = c
            if v:
                clean[(d, i, e, j)] = v
        self.table = clean

    def degrees(self) -> range:
        return range(1, self.modulus + 1)

    def degmul(self, d: int, e: int) -> int:
        return degree_product(d, e, self.modulus)

    def dim(self, d: int) -> int:
        return len(self.labels[d])

    def dims(self) -> List[int]:
        return [self.dim(d) for d in self.degrees()]

    def index(self, d: int, label: str) -> int:
        try:
            return self.labels[d].index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r} in degree {d} of {self.name}") from None

    def locate(self, label: str) -> Tuple[int, int]:
        for d in self.degrees():
            if label in self.labels[d]:
                return d, self.labels[d].index(label)
        raise KeyError(f"unknown label {label!r} in {self.name}")

    def product(self, d: int, x: Mapping[int, Scalar], e: int, y: Mapping[int, Scalar]) -> Vector:
        if d not in self.labels or e not in self.labels:
            raise ValueError(f"degree out of range: {d}, {e}")
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.table.get((d, i, e, j))
                if p:
                    vec_axpy(out, a * b, p)
        return out

    def basis_pairs(self):
        for d, e in itertools.product(self.degrees(), repeat=2):
            for i in range(self.dim(d)):
                for j in range(self.dim(e)):
                    yield d, i, e, j

    def check_associativity(self) -> Optional[Tuple]:
        """First basis triple with (xy)z != x(yz), or None."""
        for d, e, f in itertools.product(self.degrees(), repeat=3):
            de, ef = self.degmul(d, e), self.degmul(e, f)
            for i in range(self.dim(d)):
                for j in range(self.dim(e)):
                    xy = self.table.get((d, i, e, j), {})
                    for k in range(self.dim(f)):
                        left = self.product(de, xy, f, {k: 1})
                        right = self.product(d, {i: 1}, ef, self.table.get((e, j, f, k), {}))
                        if left != right:
                            return (d, i), (e, j), (f, k)
        return None

    def degree_one_nary(self, n: int) -> NAryAlgebra:
        """Degree-1 part with the n-ary product x1 x2 ... xn."""
        if (n - 1) % self.modulus:
            raise ValueError(f"arity {n} incompatible with modulus {self.modulus}")
        table = {}
        dim1 = self.dim(1)
        for idx in itertools.product(range(dim1), repeat=n):
            acc, deg = {idx[0]: Fraction(1)}, 1
            for j in idx[1:]:
                acc = self.product(deg, acc, 1, {j: 1})
                deg = self.degmul(deg, 1)
                if not acc:
                    break
            if acc:
                table[idx] = acc
        return NAryAlgebra(f"{self.name}_1", n, list(self.labels[1]), table, self.field)


def exterior_graded(N: int) -> GradedAlgebra:
    """The exterior algebra on N generators, Z_2-graded by parity, unit included.

    Degree 1 holds odd monomials, degree 2 (the zero class) even ones.
    """
    parts = {1: exterior_monomials(N, parity=1), 2: exterior_monomials(N, parity=0)}
    pos = {d: {m: i for i, m in enumerate(ms)} for d, ms in parts.items()}
    table = {}
    for d, e in itertools.product((1, 2), repeat=2):
        target = degree_product(d, e, 2)
        for i, s in enumerate(parts[d]):
            for j, t in enumerate(parts[e]):
                sign, res = wedge_monomials(s, t)
                if sign:
                    table[(d, i, e, j)] = {pos[target][res]: Fraction(sign)}
    labels = {d: [("e" + "".join(map(str, m))) if m else "1" for m in ms] for d, ms in parts.items()}
    return GradedAlgebra(f"exterior({N})", 2, labels, table)
