"""Independent brute-force oracles used to freeze expected values.

None of these touch the library's elimination or reduction code paths.
"""

from __future__ import annotations

import itertools

PRIME = 2_147_483_647


def rank_mod_p(rows, prime=PRIME, key=None):
    """Rank of sparse integer rows ({col: int}) modulo a large prime.

    Agrees with the rational rank for the small 0/+-1 systems used here.
    """
    pivots = {}
    r = 0
    for row in rows:
        row = {c: v % prime for c, v in row.items() if v % prime}
        while row:
            p = max(row, key=key) if key else max(row)
            if p not in pivots:
                inv = pow(row[p], prime - 2, prime)
                pivots[p] = {c: v * inv % prime for c, v in row.items()}
                r += 1
                break
            f = row[p]
            for c, v in pivots[p].items():
                nv = (row.get(c, 0) - f * v) % prime
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return r


def perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (0 on repeats)."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def wedge(*monomials):
    """(sign, support) of a wedge of sorted index tuples."""
    flat = tuple(i for m in monomials for i in m)
    s = perm_sign(flat)
    return s, tuple(sorted(flat))


def exterior_odd_basis(N):
    return [m for d in range(1, N + 1, 2) for m in itertools.combinations(range(1, N + 1), d)]


def ternary_wedge_table(N):
    basis = exterior_odd_basis(N)
    table = {}
    for idx in itertools.product(range(len(basis)), repeat=3):
        s, res = wedge(*(basis[i] for i in idx))
        if s and res in basis:
            table[idx] = {basis.index(res): s}
    return basis, table


def global_quotient_dim(dim, n, table, d, max_len, relators=()):
    """dim of (sum of A^{(x)L}, L = d mod n-1, L <= max_len) / span{u (w - m(w)) v}.

    ``table`` maps n-tuples to {index: int coefficient}. Columns are words of
    any length; elimination pivots on the longest word first. ``relators``
    are extra word vectors (all words of one length) whose two-sided ideal
    is added.
    """
    mod = n - 1
    lengths = [L for L in range(1, max_len + 1) if (L - 1) % mod + 1 == d]
    total = sum(dim ** L for L in lengths)
    rows = []
    for L in lengths:
        if L < n:
            continue
        for w in itertools.product(range(dim), repeat=L):
            for pos in range(L - n + 1):
                row = {w: 1}
                for k, c in table.get(w[pos:pos + n], {}).items():
                    key = w[:pos] + (k,) + w[pos + n:]
                    row[key] = row.get(key, 0) - c
                rows.append(row)
    for rel in relators:
        rlen = len(next(iter(rel)))
        for L in lengths:
            for left in range(L - rlen + 1):
                right = L - rlen - left
                if right < 0:
                    continue
                for u in itertools.product(range(dim), repeat=left):
                    for v in itertools.product(range(dim), repeat=right):
                        rows.append({u + w + v: c for w, c in rel.items()})
    return total - rank_mod_p(rows, key=lambda w: (len(w), w))
