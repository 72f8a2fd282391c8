"""Truncated universal Z_{n-1}-graded envelope O(A) = T(A)/I of an n-ary algebra.

Elements of T(A) are sparse word vectors ``{word tuple: coefficient}``.
Every word of length L is congruent modulo I to the word vector obtained by
contracting the leftmost n letters until the length drops below n, so the
degree-d component of O(A) is A^{(x)d} modulo the relation space R_d.
R_d is approximated from below by a closure depth K.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactlin import EchelonBasis, Scalar, vec_axpy, vec_clean
from .graded import GradedAlgebra, degree_product, word_degree
from .guards import size_guard
from .nary_core import NAryAlgebra, NotAssociativeError, check_associativity

ENVELOPE_GUARD = 5 * 10**6

Word = Tuple[int, ...]
WordVector = Dict[Word, Scalar]
Vector = Dict[int, Scalar]


class IdealMeetsImageError(ValueError):
    pass


class NotSubalgebraError(ValueError):
    pass


def contract(A: NAryAlgebra, wv: Mapping[Word, Scalar], pos: int) -> WordVector:
    """Replace letters ``pos .. pos+n-1`` (0-based) of every word by their product."""
    n = A.n
    out: WordVector = {}
    for w, c in wv.items():
        if pos < 0 or pos + n > len(w):
            raise ValueError(f"contraction at {pos} out of range for length {len(w)}")
        prod = A.table.get(w[pos:pos + n])
        if not prod:
            continue
        head, tail = w[:pos], w[pos + n:]
        for k, x in prod.items():
            key = head + (k,) + tail
            s = out.get(key, 0) + c * x
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def reduce_word(A: NAryAlgebra, wv: Mapping[Word, Scalar]) -> WordVector:
    """Contract the leftmost n letters until every word is shorter than n."""
    out = vec_clean(wv)
    while out:
        length = len(next(iter(out)))
        if length < A.n:
            break
        out = contract(A, out, 0)
    return out


def words(dim: int, length: int) -> Iterable[Word]:
    return itertools.product(range(dim), repeat=length)


class RelationSpaces:
    """Memoised Rel_L(t) for word length L and closure depth t."""

    def __init__(self, A: NAryAlgebra):
        self.A = A
        self._cache: Dict[Tuple[int, int], EchelonBasis] = {}

    def base(self, L: int) -> EchelonBasis:
        """span{c_1(w) - c_j(w) : |w| = L + n - 1}; the c_1 - c_j span all c_i - c_j."""
        key = (L, 1)
        if key in self._cache:
            return self._cache[key]
        A, n = self.A, self.A.n
        eb = EchelonBasis()
        if L >= 2:
            for w in words(A.dim, L + n - 1):
                first = contract(A, {w: 1}, 0)
                for pos in range(1, L):
                    other = contract(A, {w: 1}, pos)
                    if first == other:
                        continue
                    diff = dict(first)
                    vec_axpy(diff, -1, other)
                    eb.add(diff)
        self._cache[key] = eb
        return eb

    def get(self, L: int, depth: int) -> EchelonBasis:
        if depth < 1:
            raise ValueError("closure depth must be at least 1")
        if depth == 1:
            return self.base(L)
        key = (L, depth)
        if key in self._cache:
            return self._cache[key]
        A, n = self.A, self.A.n
        eb = EchelonBasis(self.base(L).basis())
        for r in self.get(L + n - 1, depth - 1).basis():
            for pos in range(L):
                img = contract(A, r, pos)
                if img:
                    eb.add(img)
        self._cache[key] = eb
        return eb


def _guard(A: NAryAlgebra, d: int, K: int) -> None:
    size_guard(A.dim ** (d + K * (A.n - 1)), ENVELOPE_GUARD, "relation space")


def relation_space(A: NAryAlgebra, d: int, K: int) -> List[WordVector]:
    """Basis (canonical RREF) of Rel_d(K) inside A^{(x)d}."""
    if not 1 <= d <= max(1, A.n - 1):
        raise ValueError(f"degree {d} outside 1..{A.n - 1}")
    if K < 1:
        raise ValueError("closure depth must be at least 1")
    _guard(A, d, K)
    return RelationSpaces(A).get(d, K).basis()


def word_label(A: NAryAlgebra, w: Word) -> str:
    return "*".join(A.labels[i] for i in w)


@dataclass
class GradedComponent:
    degree: int
    ambient_dim: int
    relations: EchelonBasis
    representatives: List[Word]

    def __post_init__(self):
        self.position = {w: i for i, w in enumerate(self.representatives)}

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def project(self, wv: Mapping[Word, Scalar]) -> Vector:
        """Coordinates of the class of a length-``degree`` word vector."""
        rem = self.relations.reduce(wv)
        return {self.position[w]: c for w, c in rem.items()}

    def lift(self, x: Mapping[int, Scalar]) -> WordVector:
        return {self.representatives[i]: c for i, c in x.items() if c}


@dataclass
class Envelope:
    algebra: NAryAlgebra
    closure_depth: int
    components: Dict[int, GradedComponent]
    graded: GradedAlgebra

    @property
    def modulus(self) -> int:
        return self.graded.modulus

    def dims(self) -> List[int]:
        return self.graded.dims()

    def degrees(self) -> range:
        return self.graded.degrees()

    def element(self, wv: Mapping[Word, Scalar]) -> Tuple[int, Vector]:
        """Degree and coordinates of the class of a homogeneous word vector."""
        wv = vec_clean(wv)
        lengths = {len(w) for w in wv}
        if len(lengths) > 1:
            raise ValueError("word vector mixes lengths")
        if not wv:
            return 1, {}
        L = lengths.pop()
        d = word_degree(L, self.modulus)
        return d, self.components[d].project(reduce_word(self.algebra, wv))

    def embed(self, v: Mapping[int, Scalar]) -> Vector:
        """The canonical map i: A -> degree 1."""
        return self.components[1].project({(k,): c for k, c in v.items()})

    def product(self, d: int, x: Mapping[int, Scalar], e: int, y: Mapping[int, Scalar]) -> Vector:
        return self.graded.product(d, x, e, y)


def envelope_product(E: Envelope, d: int, x: Mapping[int, Scalar], e: int, y: Mapping[int, Scalar]) -> Tuple[int, Vector]:
    return E.graded.degmul(d, e), E.graded.product(d, x, e, y)


def build_envelope(A: NAryAlgebra, K: int = 2, check: bool = True) -> Envelope:
    if K < 1:
        raise ValueError("closure depth must be at least 1")
    if check:
        rep = check_associativity(A)
        if not rep:
            raise NotAssociativeError(f"{A.name} is not associative: witness {rep.first_violation}")
    modulus = max(1, A.n - 1)
    for d in range(1, modulus + 1):
        _guard(A, d, K)
    spaces = RelationSpaces(A)
    components = {}
    for d in range(1, modulus + 1):
        rel = spaces.get(d, K) if d >= 1 else EchelonBasis()
        reps = [w for w in words(A.dim, d) if w not in rel.rows]
        components[d] = GradedComponent(d, A.dim ** d, rel, reps)
    table = {}
    for d, e in itertools.product(range(1, modulus + 1), repeat=2):
        target = components[degree_product(d, e, modulus)]
        for i, u in enumerate(components[d].representatives):
            for j, v in enumerate(components[e].representatives):
                img = target.project(reduce_word(A, {u + v: Fraction(1)}))
                if img:
                    table[(d, i, e, j)] = img
    labels = {d: [word_label(A, w) for w in c.representatives] for d, c in components.items()}
    graded = GradedAlgebra(f"O({A.name})", modulus, labels, table, A.field)
    env = Envelope(A, K, components, graded)
    graded.embedding = [env.embed({k: Fraction(1)}) for k in range(A.dim)]
    return env


def stabilization(A: NAryAlgebra, depths: Sequence[int] = (1, 2, 3)) -> Dict[int, List[int]]:
    """dim Rel_d(K) for each requested K, per degree."""
    spaces = RelationSpaces(A)
    out = {}
    for K in depths:
        for d in range(1, max(1, A.n - 1) + 1):
            _guard(A, d, K)
        out[K] = [spaces.get(d, K).rank for d in range(1, max(1, A.n - 1) + 1)]
    return out


def well_definedness_failures(E: Envelope, limit: Optional[int] = None) -> List[Tuple]:
    """Pairs (r, u, side) where the reduction of r(x)u or u(x)r leaves the relation space."""
    A = E.algebra
    failures = []
    for d, comp in E.components.items():
        for r in comp.relations.basis():
            for e in E.degrees():
                target = E.components[degree_product(d, e, E.modulus)]
                for u in words(A.dim, e):
                    for side in ("right", "left"):
                        prod: WordVector = {}
                        for w, c in r.items():
                            prod[w + u if side == "right" else u + w] = c
                        if target.relations.reduce(reduce_word(A, prod)):
                            failures.append((r, u, side))
                            if limit and len(failures) >= limit:
                                return failures
    return failures


# ---------------------------------------------------------------------------
# ideals and quotients


@dataclass
class GradedIdeal:
    algebra: GradedAlgebra
    parts: Dict[int, EchelonBasis]

    def dims(self) -> List[int]:
        return [self.parts[d].rank for d in self.algebra.degrees()]

    def contains(self, d: int, x: Mapping[int, Scalar]) -> bool:
        return self.parts[d].contains(x)


def _graded(E) -> GradedAlgebra:
    return E.graded if isinstance(E, Envelope) else E


def ideal_closure(E, generators: Iterable[Tuple[int, Mapping[int, Scalar]]]) -> GradedIdeal:
    """Smallest two-sided graded ideal containing the homogeneous generators ``(degree, coords)``."""
    G = _graded(E)
    parts = {d: EchelonBasis() for d in G.degrees()}
    pending: List[Tuple[int, Vector]] = []
    for d, x in generators:
        if d not in parts:
            raise ValueError(f"degree {d} out of range")
        if parts[d].add(x):
            pending.append((d, dict(x)))
    # fixpoint: each newly added vector is multiplied by every basis element on both sides
    while pending:
        d, x = pending.pop()
        for e in G.degrees():
            target = G.degmul(d, e)
            for j in range(G.dim(e)):
                for prod in (G.product(d, x, e, {j: 1}), G.product(e, {j: 1}, d, x)):
                    if prod and parts[target].add(prod):
                        pending.append((target, prod))
    return GradedIdeal(G, parts)


def ideal_avoids_image(E, I: GradedIdeal) -> bool:
    """True iff the degree-1 part of I meets the embedded copy of A only in 0."""
    G = _graded(E)
    images = G.embedding if G.embedding is not None else [{i: Fraction(1)} for i in range(G.dim(1))]
    img = EchelonBasis(images)
    joint = EchelonBasis(I.parts[1].basis())
    joint.extend(images)
    return joint.rank == I.parts[1].rank + img.rank


def quotient_envelope(E, I: GradedIdeal, check: bool = True) -> GradedAlgebra:
    G = _graded(E)
    if check and not ideal_avoids_image(G, I):
        raise IdealMeetsImageError("the ideal meets the image of A in degree 1")
    keep = {d: [i for i in range(G.dim(d)) if i not in I.parts[d].rows] for d in G.degrees()}
    pos = {d: {i: k for k, i in enumerate(ks)} for d, ks in keep.items()}

    def proj(d: int, x: Mapping[int, Scalar]) -> Vector:
        return {pos[d][i]: c for i, c in I.parts[d].reduce(x).items()}

    table = {}
    for d, e in itertools.product(G.degrees(), repeat=2):
        t = G.degmul(d, e)
        for a, i in enumerate(keep[d]):
            for b, j in enumerate(keep[e]):
                img = proj(t, G.table.get((d, i, e, j), {}))
                if img:
                    table[(d, a, e, b)] = img
    labels = {d: [G.labels[d][i] for i in keep[d]] for d in G.degrees()}
    Q = GradedAlgebra(f"{G.name}/I", G.modulus, labels, table, G.field)
    if G.embedding is not None:
        Q.embedding = [proj(1, v) for v in G.embedding]
    return Q


def annihilator_check(E, d: int, x: Mapping[int, Scalar]) -> bool:
    """x b = 0 and b x = 0 for every basis element b of every degree."""
    G = _graded(E)
    for e in G.degrees():
        for j in range(G.dim(e)):
            if G.product(d, x, e, {j: 1}) or G.product(e, {j: 1}, d, x):
                return False
    return True


def symmetric_generators(E: Envelope) -> List[Tuple[int, Vector]]:
    """Classes of a(x)b + b(x)a for generator pairs a <= b of A."""
    gens = E.algebra.generators
    out = []
    for a, b in itertools.combinations_with_replacement(gens, 2):
        out.append(E.element({(a, b): Fraction(1)}) if a == b else E.element({(a, b): Fraction(1), (b, a): Fraction(1)}))
    return out


# ---------------------------------------------------------------------------
# subalgebras


def solve_in_basis(basis: Sequence[Mapping[int, Scalar]], v: Mapping[int, Scalar]) -> Optional[Vector]:
    """Coefficients c with sum c_j basis_j = v, or None if v is outside the span."""
    eb = EchelonBasis()
    for j, b in enumerate(basis):
        row = {(0, k): c for k, c in b.items() if c}
        row[(1, j)] = Fraction(1)
        eb.add(row)
    rem = eb.reduce({(0, k): c for k, c in v.items() if c})
    if any(tag == 0 for tag, _ in rem):
        return None
    return {j: -c for (_, j), c in rem.items()}


def subalgebra(A: NAryAlgebra, basis: Sequence[Mapping[int, Scalar]], name: Optional[str] = None) -> NAryAlgebra:
    """The n-ary algebra on span(basis), which must be independent and closed."""
    from .nary_core import multiply

    basis = [vec_clean(b) for b in basis]
    if EchelonBasis(basis).rank != len(basis):
        raise ValueError("subalgebra basis is linearly dependent")
    table = {}
    for idx in itertools.product(range(len(basis)), repeat=A.n):
        prod = multiply(A, *(basis[i] for i in idx))
        if not prod:
            continue
        coeffs = solve_in_basis(basis, prod)
        if coeffs is None:
            raise NotSubalgebraError(f"product of {idx} leaves the span")
        table[idx] = coeffs
    labels = [f"b{i + 1}" for i in range(len(basis))]
    return NAryAlgebra(name or f"sub({A.name})", A.n, labels, table, A.field)


def tensor_image(images: Sequence[Mapping[int, Scalar]], w: Word) -> WordVector:
    """images[w1] (x) ... (x) images[wd] as a word vector."""
    out: WordVector = {(): Fraction(1)}
    for letter in w:
        nxt: WordVector = {}
        for prefix, c in out.items():
            for k, x in images[letter].items():
                nxt[prefix + (k,)] = c * x
        out = nxt
    return vec_clean(out)


@dataclass
class InclusionReport:
    source_dims: List[int]
    target_dims: List[int]
    ranks: List[int]
    closure_depth: int
    matrices: Dict[int, List[Vector]] = field(repr=False, default_factory=dict)

    @property
    def injective(self) -> List[bool]:
        return [r == s for r, s in zip(self.ranks, self.source_dims)]


def check_subalgebra_inclusion(A: NAryAlgebra, B_basis: Sequence[Mapping[int, Scalar]], K: int = 2) -> InclusionReport:
    B = subalgebra(A, B_basis)
    EA, EB = build_envelope(A, K), build_envelope(B, K)
    basis = [vec_clean(b) for b in B_basis]
    ranks, mats = [], {}
    for d in EB.degrees():
        cols = [EA.components[d].project(tensor_image(basis, w)) for w in EB.components[d].representatives]
        mats[d] = cols
        ranks.append(EchelonBasis(cols).rank)
    return InclusionReport(EB.dims(), EA.dims(), ranks, K, mats)
