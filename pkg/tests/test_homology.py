import itertools
from fractions import Fraction

import pytest

from naryenv.homology import (NotAComplexError, boundary_matrix, chain_dim, chain_length, check_d_squared,
                              face_map, homology_ranks)
from naryenv.nary_core import exterior_odd, matrix_algebra, multiply, nary_from_binary, truncated_poly_nary, \
    zero_algebra
from oracles import rank_mod_p


def _oracle_boundary(A, k):
    """Dense d_k built by multilinear products on basis tuples; columns indexed lexicographically."""
    n, L = A.n, chain_length(A.n, k)
    src = list(itertools.product(range(A.dim), repeat=L))
    dst = {w: r for r, w in enumerate(itertools.product(range(A.dim), repeat=L - n + 1))}
    cols = []
    for w in src:
        col = {}
        for i in range((k - 1) * (n - 1) + 1):
            prod = multiply(A, *({a: Fraction(1)} for a in w[i:i + n]))
            for c, x in prod.items():
                r = dst[w[:i] + (c,) + w[i + n:]]
                col[r] = col.get(r, 0) + (-1) ** i * x
        cols.append({r: x for r, x in col.items() if x})
    return cols


def _as_columns(m):
    return [m.column(c) for c in range(m.shape[1])]


@pytest.mark.parametrize("A,k", [
    (matrix_algebra(2), 1), (matrix_algebra(2), 2), (exterior_odd(2), 2),
    (truncated_poly_nary(4, 6), 2), (nary_from_binary(matrix_algebra(2), 3), 2),
], ids=lambda x: getattr(x, "name", str(x)))
def test_boundary_matches_oracle(A, k):
    assert _as_columns(boundary_matrix(A, k)) == _oracle_boundary(A, k)


def _oracle_composite_nnz(A, k):
    lower, upper = _oracle_boundary(A, k), _oracle_boundary(A, k + 1)
    nnz = 0
    for col in upper:
        acc = {}
        for r, x in col.items():
            for s, y in lower[r].items():
                acc[s] = acc.get(s, 0) + x * y
        nnz += sum(1 for v in acc.values() if v)
    return nnz


def test_d_squared_even_arity():
    for A in (matrix_algebra(2), truncated_poly_nary(4, 6)):
        rep = check_d_squared(A, 3)
        assert rep.all_zero and rep.max_nonzero_entry_count == 0


def test_d_squared_ternary_reports_computed_result():
    A = nary_from_binary(matrix_algebra(2), 3)
    rep = check_d_squared(A, 2)
    assert rep.nonzero_counts[1] == _oracle_composite_nnz(A, 1)
    assert not rep.all_zero
    with pytest.raises(NotAComplexError):
        homology_ranks(A, 2)
    # the zero product trivially gives a complex
    assert check_d_squared(exterior_odd(2), 2).all_zero


def _oracle_homology(A, k_max):
    ranks = {0: 0}
    for k in range(1, k_max + 1):
        ranks[k] = rank_mod_p([{r: int(x) for r, x in col.items()} for col in _oracle_boundary(A, k)])
    return [A.dim ** chain_length(A.n, k) - ranks[k] - ranks[k + 1] for k in range(k_max)]


@pytest.mark.parametrize("A,k_max,expected", [
    (matrix_algebra(2), 3, [0, 0, 0]),
    (truncated_poly_nary(4, 6), 3, [1, 4, 13]),
    (exterior_odd(2), 2, [2, 8]),
], ids=lambda x: getattr(x, "name", str(x)))
def test_homology_ranks(A, k_max, expected):
    assert _oracle_homology(A, k_max) == expected
    assert homology_ranks(A, k_max) == expected


@pytest.mark.parametrize("k", [1, 2, 3])
def test_zero_algebra_homology(k):
    # all boundaries vanish, so h_j = dim C_j = 2^(j+1)
    assert homology_ranks(zero_algebra(2, 2), k) == [2 ** (j + 1) for j in range(k)]


def test_shapes_and_ranges():
    A = truncated_poly_nary(4, 6)
    assert chain_length(4, 2) == 7
    assert chain_dim(A, 2) == 2 ** 7
    assert boundary_matrix(A, 2).shape == (2 ** 4, 2 ** 7)
    with pytest.raises(ValueError):
        face_map(A, 2, 4, (0,) * 7)
    with pytest.raises(ValueError):
        face_map(A, 2, 0, (0,) * 6)
    with pytest.raises(ValueError):
        check_d_squared(A, 1)
    assert face_map(A, 2, 3, (1, 1, 1, 0, 0, 0, 0)) == {(1, 1, 1, 1): Fraction(1)}
