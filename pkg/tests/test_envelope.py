import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from naryenv.envelope import (IdealMeetsImageError, NotSubalgebraError, annihilator_check, build_envelope,
                              check_subalgebra_inclusion, ideal_avoids_image, ideal_closure, quotient_envelope,
                              reduce_word, relation_space, stabilization, subalgebra, symmetric_generators,
                              well_definedness_failures)
from naryenv.graded import word_degree
from naryenv.nary_core import (NotAssociativeError, exterior_odd, matrix_algebra, multiply, nary_from_binary,
                               perturb, truncated_poly_nary)
from oracles import global_quotient_dim, perm_sign, wedge

ONE = Fraction(1)


def _int_table(A):
    return {k: {i: int(c) for i, c in v.items()} for k, v in A.table.items()}


def _symmetric_relators(A):
    gens = A.generators
    return [{(a, b): 1} if a == b else {(a, b): 1, (b, a): 1}
            for a, b in itertools.combinations_with_replacement(gens, 2)]


# frozen from tests/oracles.global_quotient_dim (length cap d + 2(n-1), checked stable at d + 4(n-1))
ENVELOPE_DIMS = {
    "exterior_odd(2)": [2, 4],
    "exterior_odd(3)": [4, 9],
    "truncated_poly(4,6)": [2, 2, 2],
    "M2^(3)": [4, 4],
    "M2": [4],
}
SYMMETRIC_QUOTIENT_DIMS = {"exterior_odd(2)": [2, 1], "exterior_odd(3)": [4, 3]}

ALGEBRAS = {
    "exterior_odd(2)": lambda: exterior_odd(2),
    "exterior_odd(3)": lambda: exterior_odd(3),
    "truncated_poly(4,6)": lambda: truncated_poly_nary(4, 6),
    "M2^(3)": lambda: nary_from_binary(matrix_algebra(2), 3),
    "M2": lambda: matrix_algebra(2),
}


@pytest.mark.parametrize("name", ["exterior_odd(2)", "exterior_odd(3)", "truncated_poly(4,6)"])
def test_oracle_reproduces_frozen_dims(name):
    A = ALGEBRAS[name]()
    mod = max(1, A.n - 1)
    dims = [global_quotient_dim(A.dim, A.n, _int_table(A), d, d + 2 * mod) for d in range(1, mod + 1)]
    assert dims == ENVELOPE_DIMS[name]


@pytest.mark.parametrize("name", sorted(ENVELOPE_DIMS))
def test_envelope_dims(name):
    assert build_envelope(ALGEBRAS[name](), K=2).dims() == ENVELOPE_DIMS[name]


@pytest.mark.parametrize("name", sorted(SYMMETRIC_QUOTIENT_DIMS))
def test_symmetric_quotient_matches_oracle(name):
    A = ALGEBRAS[name]()
    oracle = [global_quotient_dim(A.dim, 3, _int_table(A), d, 6, _symmetric_relators(A)) for d in (1, 2)]
    assert oracle == SYMMETRIC_QUOTIENT_DIMS[name]
    E = build_envelope(A, K=2)
    I = ideal_closure(E, symmetric_generators(E))
    assert ideal_avoids_image(E, I)
    assert quotient_envelope(E, I).dims() == oracle
    assert I.dims() == [a - b for a, b in zip(E.dims(), oracle)]


def test_exterior3_degree_two_is_odd_generators_squared():
    # every tensor with an e123 factor is a relation; degree 2 is spanned by e_i (x) e_j
    E = build_envelope(exterior_odd(3), K=2)
    reps = E.components[2].representatives
    assert sorted(reps) == [(i, j) for i in range(3) for j in range(3)]
    for i in range(4):
        assert E.element({(i, 3): ONE})[1] == {}
        assert E.element({(3, i): ONE})[1] == {}


@pytest.mark.parametrize("K", [1, 2, 3])
def test_relation_space_dims(K):
    A = exterior_odd(3)
    assert len(relation_space(A, 1, K)) == 0
    assert len(relation_space(A, 2, K)) == 16 - 9


def test_stabilization():
    assert stabilization(truncated_poly_nary(4, 6)) == {1: [0, 2, 6], 2: [0, 2, 6], 3: [0, 2, 6]}
    assert stabilization(exterior_odd(2)) == {1: [0, 0], 2: [0, 0], 3: [0, 0]}


def test_reduce_word_examples():
    A = exterior_odd(3)
    assert reduce_word(A, {(0, 1, 2): ONE}) == {(3,): ONE}
    assert reduce_word(A, {(1, 0, 2): ONE}) == {(3,): -ONE}
    assert reduce_word(A, {(0, 0, 1): ONE}) == {}
    assert reduce_word(A, {(0, 1): ONE}) == {(0, 1): ONE}
    assert reduce_word(A, {(0, 1, 2, 0): ONE}) == {(3, 0): ONE}
    assert reduce_word(A, {(0, 1, 2, 0, 1): ONE}) == {}


words5 = st.lists(st.integers(0, 3), min_size=1, max_size=7).map(tuple)


@given(words5)
def test_reduce_word_matches_wedge_and_degree(w):
    A = exterior_odd(3)
    red = reduce_word(A, {w: ONE})
    assert all(len(v) < 3 and word_degree(len(v), 2) == word_degree(len(w), 2) for v in red)
    if len(w) % 2 == 1:
        basis = [(1,), (2,), (3,), (1, 2, 3)]
        s, supp = wedge(*(basis[i] for i in w))
        expected = {(basis.index(supp),): s} if s and supp in basis else {}
        assert red == expected


def test_product_embeds_algebra():
    for name in ("exterior_odd(3)", "truncated_poly(4,6)", "M2^(3)"):
        A = ALGEBRAS[name]()
        E = build_envelope(A, K=2)
        for idx in itertools.product(range(A.dim), repeat=A.n):
            d, acc = 1, E.embed({idx[0]: ONE})
            for i in idx[1:]:
                acc = E.product(d, acc, 1, E.embed({i: ONE}))
                d = E.graded.degmul(d, 1)
            assert d == 1
            assert acc == E.embed(A.basis_product(idx))


@pytest.mark.parametrize("name", sorted(ENVELOPE_DIMS))
def test_envelope_associative_and_well_defined(name):
    E = build_envelope(ALGEBRAS[name](), K=2)
    assert E.graded.check_associativity() is None
    assert well_definedness_failures(E) == []


def test_non_associative_rejected():
    with pytest.raises(NotAssociativeError):
        build_envelope(perturb(exterior_odd(2), (0, 0, 1), 1))
    with pytest.raises(ValueError):
        build_envelope(exterior_odd(2), K=0)


def test_ideal_meeting_image_rejected():
    E = build_envelope(exterior_odd(2), K=2)
    I = ideal_closure(E, [E.element({(0,): ONE})])
    assert not ideal_avoids_image(E, I)
    with pytest.raises(IdealMeetsImageError):
        quotient_envelope(E, I)


def test_ideal_is_closed():
    E = build_envelope(exterior_odd(3), K=2)
    I = ideal_closure(E, symmetric_generators(E))
    G = E.graded
    for d in G.degrees():
        for x in I.parts[d].basis():
            for e in G.degrees():
                for j in range(G.dim(e)):
                    t = G.degmul(d, e)
                    assert I.contains(t, G.product(d, x, e, {j: ONE}))
                    assert I.contains(t, G.product(e, {j: ONE}, d, x))


def test_annihilator():
    E = build_envelope(exterior_odd(3), K=2)
    assert annihilator_check(E, 1, E.embed({3: ONE}))
    assert not annihilator_check(E, 1, E.embed({0: ONE}))


def test_subalgebra_inclusion():
    A = exterior_odd(3)
    rep = check_subalgebra_inclusion(A, [{0: ONE}, {1: ONE}], K=2)
    assert rep.source_dims == [2, 4]
    assert rep.target_dims == [4, 9]
    assert rep.injective == [True, True]
    B = subalgebra(A, [{0: ONE}, {1: ONE}])
    assert B.table == exterior_odd(2).table


def test_not_subalgebra():
    with pytest.raises(NotSubalgebraError):
        subalgebra(exterior_odd(3), [{0: ONE}, {1: ONE}, {2: ONE}])
    with pytest.raises(ValueError):
        subalgebra(exterior_odd(3), [{0: ONE}, {0: 2 * ONE}])


def test_perm_sign_oracle_sanity():
    assert perm_sign((2, 1, 3)) == -1
    assert perm_sign((3, 1, 2)) == 1
    assert perm_sign((1, 1)) == 0
