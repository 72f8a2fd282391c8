"""Finite n-ary semigroups, their universal graded semigroups, and ternary groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .graded import word_degree

Word = Tuple[int, ...]


class NotAssociativeError(ValueError):
    pass


class NotHomomorphismError(ValueError):
    pass


@dataclass
class NSemigroupTable:
    name: str
    n: int
    elements: List[str]
    table: Dict[Tuple[int, ...], int]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("arity must be at least 2")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"duplicate element names in {self.name}")
        self.table = {tuple(k): v for k, v in self.table.items()}
        for key in itertools.product(range(self.order), repeat=self.n):
            if key not in self.table:
                names = " ".join(self.elements[i] for i in key)
                raise ValueError(f"operation table of {self.name} misses the tuple ({names})")
            if not 0 <= self.table[key] < self.order:
                raise ValueError(f"table value out of range at {key}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise KeyError(f"unknown element {name!r} in {self.name}") from None

    def op(self, *args: int) -> int:
        return self.table[args]

    def evaluate(self, word: Sequence[int]) -> int:
        """Total product of a word of length = 1 mod n-1, contracting leftmost first."""
        w = list(word)
        if (len(w) - 1) % (self.n - 1):
            raise ValueError(f"length {len(w)} is not 1 mod {self.n - 1}")
        while len(w) > 1:
            w[: self.n] = [self.table[tuple(w[: self.n])]]
        return w[0]


@dataclass
class SgAssocReport:
    passed: bool
    first_violation: Optional[Tuple[Word, int, int]] = None

    def __bool__(self):
        return self.passed


def _compose(T: NSemigroupTable, w: Word, pos: int) -> int:
    inner = T.table[w[pos:pos + T.n]]
    return T.table[w[:pos] + (inner,) + w[pos + T.n:]]


def check_nsg_associativity(T: NSemigroupTable) -> SgAssocReport:
    for w in itertools.product(range(T.order), repeat=2 * T.n - 1):
        ref = _compose(T, w, 0)
        for pos in range(1, T.n):
            if _compose(T, w, pos) != ref:
                return SgAssocReport(False, (w, 1, pos + 1))
    return SgAssocReport(True)


class UnionFind:
    def __init__(self):
        self.parent: Dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # keep the shortlex-smallest word as root so roots are canonical
        if (len(rb), rb) < (len(ra), ra):
            ra, rb = rb, ra
        self.parent[rb] = ra


@dataclass
class GradedTable:
    """A finite binary semigroup with a grading into Z_modulus (degrees compared mod modulus)."""

    name: str
    elements: List[str]
    table: Dict[Tuple[int, int], int]
    degree: List[int]
    modulus: int

    def mul(self, a: int, b: int) -> int:
        return self.table[(a, b)]

    def product(self, seq: Sequence[int]) -> int:
        acc = seq[0]
        for x in seq[1:]:
            acc = self.table[(acc, x)]
        return acc

    def deg(self, a: int) -> int:
        return self.degree[a] % self.modulus

    def is_graded(self) -> bool:
        return all(self.deg(self.table[(a, b)]) == (self.deg(a) + self.deg(b)) % self.modulus
                   for a, b in itertools.product(range(len(self.elements)), repeat=2))


@dataclass
class SgEnvelope:
    source: NSemigroupTable
    max_length: int
    classes: Dict[int, List[List[Word]]]
    class_of: Dict[Word, Tuple[int, int]] = field(repr=False)

    @property
    def modulus(self) -> int:
        return self.source.n - 1

    def counts(self) -> List[int]:
        return [len(self.classes[d]) for d in range(1, self.modulus + 1)]

    def representative(self, d: int, c: int) -> Word:
        return self.classes[d][c][0]

    def multiply(self, x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
        w = self.representative(*x) + self.representative(*y)
        while len(w) > self.max_length:
            w = (self.source.table[w[: self.source.n]],) + w[self.source.n:]
        return self.class_of[w]

    def as_graded_table(self) -> GradedTable:
        keys = [(d, c) for d in range(1, self.modulus + 1) for c in range(len(self.classes[d]))]
        pos = {k: i for i, k in enumerate(keys)}
        names = ["[" + "*".join(self.source.elements[i] for i in self.representative(*k)) + "]" for k in keys]
        table = {(pos[x], pos[y]): pos[self.multiply(x, y)] for x in keys for y in keys}
        return GradedTable(f"O({self.source.name})", names, table, [d for d, _ in keys], self.modulus)


def build_sg_envelope(T: NSemigroupTable, L: Optional[int] = None) -> SgEnvelope:
    """Congruence on words of length <= L generated by contracting any n consecutive letters."""
    n = T.n
    L = 2 * (2 * n - 1) if L is None else L
    if L < 2 * n - 1:
        raise ValueError(f"word cap must be at least {2 * n - 1}")
    rep = check_nsg_associativity(T)
    if not rep:
        raise NotAssociativeError(f"{T.name} is not associative: witness {rep.first_violation}")
    uf = UnionFind()
    all_words = [w for length in range(1, L + 1) for w in itertools.product(range(T.order), repeat=length)]
    for w in all_words:
        uf.add(w)
    for w in all_words:
        for pos in range(len(w) - n + 1):
            uf.union(w, w[:pos] + (T.table[w[pos:pos + n]],) + w[pos + n:])
    groups: Dict[Word, List[Word]] = {}
    for w in all_words:
        groups.setdefault(uf.find(w), []).append(w)
    classes: Dict[int, List[List[Word]]] = {d: [] for d in range(1, n)}
    for root in sorted(groups, key=lambda r: (len(r), r)):
        members = sorted(groups[root], key=lambda r: (len(r), r))
        classes[word_degree(len(root), n - 1)].append(members)
    class_of = {}
    for d, cs in classes.items():
        for c, members in enumerate(cs):
            for w in members:
                class_of[w] = (d, c)
    return SgEnvelope(T, L, classes, class_of)


@dataclass
class UniversalityReport:
    homomorphism: bool
    well_defined: bool
    commutes: bool
    multiplicative: bool
    degree_preserving: bool
    images: Dict[int, List[int]]  # degree -> image of each class

    @property
    def passed(self) -> bool:
        return all((self.homomorphism, self.well_defined, self.commutes, self.multiplicative, self.degree_preserving))


def sg_universality_check(T: NSemigroupTable, N: GradedTable, rho: Sequence[int], L: Optional[int] = None,
                          envelope: Optional[SgEnvelope] = None) -> UniversalityReport:
    n = T.n
    if N.modulus != n - 1:
        raise ValueError("target grading modulus must be n-1")
    if len(rho) != T.order:
        raise ValueError("rho needs one image per element")
    for w in itertools.product(range(T.order), repeat=n):
        if rho[T.table[w]] != N.product([rho[i] for i in w]):
            raise NotHomomorphismError(f"rho does not preserve the product on {w}")
    if any(N.deg(r) != 1 % N.modulus for r in rho):
        raise NotHomomorphismError("rho must land in degree 1")
    E = envelope or build_sg_envelope(T, L)
    images: Dict[int, List[int]] = {}
    well_defined = True
    for d, cs in E.classes.items():
        images[d] = []
        for members in cs:
            values = {N.product([rho[i] for i in w]) for w in members}
            well_defined &= len(values) == 1
            images[d].append(min(values))
    commutes = all(images[1][E.class_of[(a,)][1]] == rho[a] for a in range(T.order))
    keys = [(d, c) for d in E.classes for c in range(len(E.classes[d]))]
    multiplicative = all(
        images[E.multiply(x, y)[0]][E.multiply(x, y)[1]] == N.mul(images[x[0]][x[1]], images[y[0]][y[1]])
        for x in keys for y in keys
    )
    degree_preserving = all(N.deg(images[d][c]) == d % N.modulus for d, c in keys)
    return UniversalityReport(True, well_defined, commutes, multiplicative, degree_preserving, images)


# ---------------------------------------------------------------------------
# groups and ternary groups


def group_table(name: str, elements: List[str], mul) -> NSemigroupTable:
    k = len(elements)
    return NSemigroupTable(name, 2, elements, {(a, b): mul(a, b) for a in range(k) for b in range(k)})


def group_identity(H: NSemigroupTable) -> Optional[int]:
    for e in range(H.order):
        if all(H.table[(e, x)] == x == H.table[(x, e)] for x in range(H.order)):
            return e
    return None


def is_group(H: NSemigroupTable) -> bool:
    if H.n != 2 or not check_nsg_associativity(H):
        return False
    e = group_identity(H)
    if e is None:
        return False
    return all(any(H.table[(a, b)] == e for b in range(H.order)) for a in range(H.order))


def cyclic_group(k: int) -> NSemigroupTable:
    return group_table(f"Z{k}", [str(i) for i in range(k)], lambda a, b: (a + b) % k)


def dihedral_group(m: int) -> Tuple[NSemigroupTable, List[int]]:
    """Symmetries of the m-gon as (r^i s^f) and the grading 'is a reflection'."""
    elems = [(i, f) for f in (0, 1) for i in range(m)]

    def mul(x, y):
        (i, f), (j, g) = elems[x], elems[y]
        return elems.index(((i + (-j if f else j)) % m, f ^ g))

    names = [("r%d" % i if not f else "s" if i == 0 else "r%ds" % i) for i, f in elems]
    names[0] = "1"
    return group_table(f"D{m}", names, mul), [f for _, f in elems]


def units_mod(k: int) -> NSemigroupTable:
    units = [u for u in range(1, k) if _gcd(u, k) == 1]
    return group_table(f"U{k}", [str(u) for u in units], lambda a, b: units.index(units[a] * units[b] % k))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def direct_product(H1: NSemigroupTable, H2: NSemigroupTable) -> NSemigroupTable:
    pairs = list(itertools.product(range(H1.order), range(H2.order)))
    names = [f"({H1.elements[a]},{H2.elements[b]})" for a, b in pairs]
    return group_table(f"{H1.name}x{H2.name}", names,
                       lambda x, y: pairs.index((H1.table[(pairs[x][0], pairs[y][0])], H2.table[(pairs[x][1], pairs[y][1])])))


def odd_residues(modulus: int, op: str = "mul", n: int = 3) -> NSemigroupTable:
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    odds = list(range(1, modulus, 2))
    f = (lambda xs: _prod(xs) % modulus) if op == "mul" else (lambda xs: sum(xs) % modulus)
    table = {idx: odds.index(f([odds[i] for i in idx])) for idx in itertools.product(range(len(odds)), repeat=n)}
    return NSemigroupTable(f"odds{modulus}{op}", n, [str(o) for o in odds], table)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def graded_group_degree1(H: NSemigroupTable, grading: Sequence[int], modulus: int) -> NSemigroupTable:
    """Inverse image of 1 under a grading H -> Z_modulus, with the (modulus+1)-ary product."""
    if modulus < 2:
        raise ValueError("grading modulus must be at least 2")
    if H.n != 2:
        raise ValueError("expected a binary group table")
    g = [x % modulus for x in grading]
    for a, b in itertools.product(range(H.order), repeat=2):
        if g[H.table[(a, b)]] != (g[a] + g[b]) % modulus:
            raise ValueError(f"grading is not a homomorphism at ({H.elements[a]}, {H.elements[b]})")
    if set(g) != set(range(modulus)):
        raise ValueError("grading is not onto")
    fiber = [a for a in range(H.order) if g[a] == 1]
    if not fiber:
        raise ValueError("empty degree-1 fiber")
    n = modulus + 1
    table = {}
    for idx in itertools.product(range(len(fiber)), repeat=n):
        table[idx] = fiber.index(_binary_product(H, [fiber[i] for i in idx]))
    return NSemigroupTable(f"{H.name}_1", n, [H.elements[a] for a in fiber], table)


def _binary_product(H: NSemigroupTable, seq: Sequence[int]) -> int:
    acc = seq[0]
    for x in seq[1:]:
        acc = H.table[(acc, x)]
    return acc


@dataclass
class TernaryGroup:
    name: str
    elements: List[str]
    table: Dict[Tuple[int, int, int], int]
    inverse: List[int]

    def __post_init__(self):
        self.semigroup = NSemigroupTable(self.name, 3, self.elements, self.table)
        self.table = self.semigroup.table
        if len(self.inverse) != len(self.elements) or not all(0 <= i < len(self.elements) for i in self.inverse):
            raise ValueError("inverse table must map every element to an element")

    @property
    def order(self) -> int:
        return len(self.elements)

    def op(self, a: int, b: int, c: int) -> int:
        return self.table[(a, b, c)]


def ternary_group_from(T: NSemigroupTable, inverse: Sequence[int]) -> TernaryGroup:
    return TernaryGroup(T.name, list(T.elements), dict(T.table), list(inverse))


def degree1_ternary_group(H: NSemigroupTable, grading: Sequence[int]) -> TernaryGroup:
    """Degree-1 part of a Z_2-graded group with the inverse inherited from H."""
    T = graded_group_degree1(H, grading, 2)
    e = group_identity(H)
    fiber = [H.index(x) for x in T.elements]
    inv = []
    for a in fiber:
        b = next(b for b in range(H.order) if H.table[(a, b)] == e)
        inv.append(fiber.index(b))
    return ternary_group_from(T, inv)


@dataclass
class TernaryReport:
    passed: bool
    associative: bool
    witness: Optional[Tuple] = None


def check_ternary_group(G: TernaryGroup) -> TernaryReport:
    assoc = check_nsg_associativity(G.semigroup)
    if not assoc:
        return TernaryReport(False, False, ("associativity",) + assoc.first_violation)
    for g, h in itertools.product(range(G.order), repeat=2):
        gi = G.inverse[g]
        if G.op(g, gi, h) != h:
            return TernaryReport(False, True, ("left", g, h))
        if G.op(h, g, gi) != h:
            return TernaryReport(False, True, ("right", g, h))
    return TernaryReport(True, True)


@dataclass
class ConjugationReport:
    homomorphism: bool
    injective: bool
    bijective: bool
    inverse_map_ok: bool
    identity: bool
    mapping: List[int]

    @property
    def passed(self) -> bool:
        return self.homomorphism and self.injective and self.inverse_map_ok


def conjugation_hom_check(G: TernaryGroup, g: int) -> ConjugationReport:
    """h -> g^-1 h g and the candidate inverse h -> g h g^-1."""
    gi = G.inverse[g]
    phi = [G.op(gi, h, g) for h in range(G.order)]
    psi = [G.op(g, h, gi) for h in range(G.order)]
    hom = all(phi[G.op(a, b, c)] == G.op(phi[a], phi[b], phi[c])
              for a, b, c in itertools.product(range(G.order), repeat=3))
    injective = len(set(phi)) == G.order
    inverse_ok = all(psi[phi[h]] == h for h in range(G.order))
    return ConjugationReport(hom, injective, injective, inverse_ok, phi == list(range(G.order)), phi)


# ---------------------------------------------------------------------------
# isomorphism types of small groups


def group_canonical_form(H: NSemigroupTable) -> Tuple:
    """Lexicographically least relabelled table over minimal ordered generating tuples."""
    e = group_identity(H)
    best = None
    for r in range(0, H.order + 1):
        for gens in itertools.permutations([x for x in range(H.order) if x != e], r):
            order = [e]
            seen = {e}
            i = 0
            while i < len(order):
                for s in gens:
                    y = H.table[(order[i], s)]
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                i += 1
            if len(order) != H.order:
                continue
            pos = {x: k for k, x in enumerate(order)}
            form = tuple(pos[H.table[(a, b)]] for a in order for b in order)
            if best is None or form < best:
                best = form
        if best is not None:
            return (H.order, best)
    raise ValueError("not a group")


def is_cyclic(H: NSemigroupTable) -> bool:
    return group_canonical_form(H) == group_canonical_form(cyclic_group(H.order))


# ---------------------------------------------------------------------------
# embedding search


@dataclass
class EmbeddingReport:
    found: bool
    max_order: int
    group: Optional[NSemigroupTable] = None
    grading: Optional[List[int]] = None
    embedding: Optional[List[int]] = None
    reason: str = ""

    @property
    def exhausted_order(self) -> Optional[int]:
        return None if self.found else self.max_order


def search_group_embedding(G: TernaryGroup, max_order: Optional[int] = None) -> EmbeddingReport:
    """Look for a Z_2-graded group containing G in degree 1, preserving product and inverse.

    Any such embedding restricts to the subgroup generated by the image,
    whose degree-1 part is the image itself and whose degree-0 part
    consists of products x_a x_b, each determined by its left action
    h -> m(a, b, h). That group has order 2|G| and its table is forced
    by G, so one candidate decides every order at once.
    """
    m = G.order
    max_order = 12 if max_order is None else max_order
    if m < 1:
        raise ValueError("empty ternary group")
    if max_order < 2 * m:
        raise ValueError(f"max_order must be at least 2|G| = {2 * m}")

    def fail(reason: str) -> EmbeddingReport:
        return EmbeddingReport(False, max_order, reason=reason)

    left = {}
    for a, b in itertools.product(range(m), repeat=2):
        act = tuple(G.op(a, b, h) for h in range(m))
        left.setdefault(act, (a, b))
    acts = list(left)
    if len(acts) != m:
        return fail(f"degree-0 candidates number {len(acts)}, not |G| = {m}")
    act_pos = {a: i for i, a in enumerate(acts)}
    size = 2 * m
    # labels 0..m-1 are x_g (degree 1), m..2m-1 the left actions (degree 0)
    table: Dict[Tuple[int, int], int] = {}
    for x, y in itertools.product(range(size), repeat=2):
        if x < m and y < m:
            table[(x, y)] = m + act_pos[tuple(G.op(x, y, h) for h in range(m))]
        elif x < m:
            outs = {G.op(x, a, b) for a, b in itertools.product(range(m), repeat=2)
                    if tuple(G.op(a, b, h) for h in range(m)) == acts[y - m]}
            if len(outs) != 1:
                return fail("x_a (x_b x_c) is not determined by the class of x_b x_c")
            table[(x, y)] = outs.pop()
        elif y < m:
            table[(x, y)] = acts[x - m][y]
        else:
            comp = tuple(acts[x - m][acts[y - m][h]] for h in range(m))
            if comp not in act_pos:
                return fail("degree-0 elements are not closed under composition")
            table[(x, y)] = m + act_pos[comp]
    names = list(G.elements) + ["*".join(G.elements[i] for i in left[a]) for a in acts]
    H = NSemigroupTable(f"U({G.name})", 2, names, table)
    if not is_group(H):
        return fail("the forced candidate is not a group")
    e = group_identity(H)
    grading = [1] * m + [0] * m
    if any(table[(G.inverse[g], g)] != e or table[(g, G.inverse[g])] != e for g in range(m)):
        return fail("the inverse map is not carried to group inverses")
    for a, b, c in itertools.product(range(m), repeat=3):
        if table[(table[(a, b)], c)] != G.op(a, b, c):
            return fail("ternary product not preserved")
    return EmbeddingReport(True, max_order, H, grading, list(range(m)))
