"""Slow, independent reference computations used to cross-check the library."""

from itertools import product


def rank_mod_p_ref(rows, p):
    """Row reduction on plain Python lists."""
    m = [[x % p for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def all_ranks(g, p):
    """Every rank attained by a matrix described by ``g``, by full enumeration."""
    edges = g.sorted_edges()
    seen = set()
    for values in product(range(1, p), repeat=len(edges)):
        a = [[0] * g.n for _ in range(g.n)]
        for (i, j), x in zip(edges, values):
            a[i][j] = x
            a[j][i] = p - x
        seen.add(rank_mod_p_ref(a, p))
    return seen
