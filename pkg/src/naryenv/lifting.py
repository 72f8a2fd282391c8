"""Lifting n-ary homomorphisms to graded homomorphisms of envelopes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence

from .envelope import Envelope, build_envelope, tensor_image
from .exactlin import EchelonBasis, Scalar, vec_axpy, vec_clean
from .graded import GradedAlgebra
from .nary_core import NAryAlgebra, multiply

Vector = Dict[int, Scalar]


class NotHomomorphismError(ValueError):
    pass


class WellDefinednessError(RuntimeError):
    """A relation class maps to a nonzero element (too small K, or a bad map)."""


def _apply(images: Sequence[Mapping[int, Scalar]], v: Mapping[int, Scalar]) -> Vector:
    out: Vector = {}
    for i, c in v.items():
        vec_axpy(out, c, images[i])
    return out


@dataclass
class NAryHom:
    """Linear map given by the images of the source basis; checked on construction."""

    source: NAryAlgebra
    target: NAryAlgebra
    images: List[Vector]

    def __post_init__(self):
        if len(self.images) != self.source.dim:
            raise ValueError("one image per source basis element is required")
        self.images = [vec_clean(v) for v in self.images]
        if self.source.n != self.target.n:
            raise NotHomomorphismError("source and target arities differ")
        bad = self.first_violation()
        if bad is not None:
            raise NotHomomorphismError(f"product not preserved on basis tuple {bad}")

    def __call__(self, v: Mapping[int, Scalar]) -> Vector:
        return _apply(self.images, v)

    def first_violation(self):
        A, B = self.source, self.target
        for idx in itertools.product(range(A.dim), repeat=A.n):
            lhs = self(A.basis_product(idx))
            rhs = multiply(B, *(self.images[i] for i in idx))
            if lhs != rhs:
                return idx
        return None

    def compose(self, other: "NAryHom") -> "NAryHom":
        """self after other."""
        return NAryHom(other.source, self.target, [self(v) for v in other.images])


def identity_hom(A: NAryAlgebra) -> NAryHom:
    return NAryHom(A, A, [{i: Fraction(1)} for i in range(A.dim)])


def zero_hom(A: NAryAlgebra, B: NAryAlgebra) -> NAryHom:
    return NAryHom(A, B, [{} for _ in range(A.dim)])


@dataclass
class GradedHom:
    source: GradedAlgebra
    target: GradedAlgebra
    matrices: Dict[int, List[Vector]]  # degree -> image of each source basis element
    envelope: Optional[Envelope] = field(default=None, repr=False)
    commutes: bool = True

    def __call__(self, d: int, x: Mapping[int, Scalar]) -> Vector:
        return _apply(self.matrices[d], x)

    def ranks(self) -> List[int]:
        return [EchelonBasis(self.matrices[d]).rank for d in self.source.degrees()]

    def kernel_dims(self) -> List[int]:
        return [self.source.dim(d) - r for d, r in zip(self.source.degrees(), self.ranks())]

    def is_multiplicative(self) -> bool:
        S, T = self.source, self.target
        for d, i, e, j in S.basis_pairs():
            lhs = self(S.degmul(d, e), S.table.get((d, i, e, j), {}))
            rhs = T.product(d, self.matrices[d][i], e, self.matrices[e][j])
            if lhs != rhs:
                return False
        return True

    def same_as(self, other: "GradedHom") -> bool:
        return all(
            [vec_clean(v) for v in self.matrices[d]] == [vec_clean(v) for v in other.matrices[d]]
            for d in self.source.degrees()
        )

    def compose(self, other: "GradedHom") -> "GradedHom":
        """self after other."""
        mats = {d: [self(d, v) for v in other.matrices[d]] for d in other.source.degrees()}
        return GradedHom(other.source, self.target, mats)


def _word_product(M: GradedAlgebra, images: Sequence[Mapping[int, Scalar]], w) -> Vector:
    acc, deg = dict(images[w[0]]), 1
    for letter in w[1:]:
        acc = M.product(deg, acc, 1, images[letter])
        deg = M.degmul(deg, 1)
        if not acc:
            return {}
    return acc


def lift_hom(A: NAryAlgebra, M: GradedAlgebra, rho: Sequence[Mapping[int, Scalar]], K: int = 2,
             envelope: Optional[Envelope] = None) -> GradedHom:
    """The graded map O(A) -> M sending the class of a1(x)...(x)ad to rho(a1)...rho(ad)."""
    if M.modulus != max(1, A.n - 1):
        raise ValueError(f"target modulus {M.modulus} differs from n-1 = {A.n - 1}")
    images = [vec_clean(v) for v in rho]
    NAryHom(A, M.degree_one_nary(A.n), images)
    E = envelope or build_envelope(A, K)
    mats: Dict[int, List[Vector]] = {}
    for d, comp in E.components.items():
        mats[d] = [_word_product(M, images, w) for w in comp.representatives]
        for r in comp.relations.basis():
            val: Vector = {}
            for w, c in r.items():
                vec_axpy(val, c, _word_product(M, images, w))
            if val:
                raise WellDefinednessError(f"relation in degree {d} maps to a nonzero element")
    lift = GradedHom(E.graded, M, mats, E)
    lift.commutes = all(lift(1, E.embed({k: Fraction(1)})) == images[k] for k in range(A.dim))
    return lift


@dataclass
class ImageReport:
    image_dims: List[int]
    kernel_dims: List[int]
    source_dims: List[int]
    consistent: bool


def generated_subalgebra(M: GradedAlgebra, degree_one: Sequence[Mapping[int, Scalar]]) -> Dict[int, EchelonBasis]:
    """Per-degree span of all products of the given degree-1 elements."""
    parts = {d: EchelonBasis() for d in M.degrees()}
    pending = []
    for v in degree_one:
        if parts[1].add(v):
            pending.append((1, vec_clean(v)))
    while pending:
        d, x = pending.pop()
        for e in M.degrees():
            for y in list(parts[e].basis()):
                t = M.degmul(d, e)
                for prod in (M.product(d, x, e, y), M.product(e, y, d, x)):
                    if prod and parts[t].add(prod):
                        pending.append((t, prod))
    return parts


def image_subalgebra(lift: GradedHom) -> ImageReport:
    M = lift.target
    rho = [lift(1, v) for v in lift.source.embedding] if lift.source.embedding else lift.matrices[1]
    generated = generated_subalgebra(M, rho)
    image = [generated[d].rank for d in M.degrees()]
    ranks = lift.ranks()
    source = lift.source.dims()
    kernel = [s - r for s, r in zip(source, ranks)]
    return ImageReport(image, kernel, source, image == ranks)


def envelope_functor(phi: NAryHom, K: int = 2, source: Optional[Envelope] = None,
                     target: Optional[Envelope] = None) -> GradedHom:
    """O(phi): class of a1(x)...(x)ad -> class of phi(a1)(x)...(x)phi(ad)."""
    EA = source or build_envelope(phi.source, K)
    EB = target or build_envelope(phi.target, K)
    mats: Dict[int, List[Vector]] = {}
    for d, comp in EA.components.items():
        tcomp = EB.components[d]
        mats[d] = [tcomp.project(tensor_image(phi.images, w)) for w in comp.representatives]
        for r in comp.relations.basis():
            img = {}
            for w, c in r.items():
                vec_axpy(img, c, tensor_image(phi.images, w))
            if tcomp.project(img):
                raise WellDefinednessError(f"relation in degree {d} maps outside the target relations")
    hom = GradedHom(EA.graded, EB.graded, mats, EA)
    hom.commutes = all(
        hom(1, EA.embed({k: Fraction(1)})) == EB.embed(phi.images[k]) for k in range(phi.source.dim)
    )
    return hom
