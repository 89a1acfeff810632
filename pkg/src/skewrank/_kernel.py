"""Compiled odometer for the exhaustive rank searches.

Vertices are added one at a time.  Appending a column ``c`` to the leading
skew block ``B`` keeps the rank when ``c`` is orthogonal to the null space of
``B`` and raises it by exactly two otherwise, so the rank of every prefix is
known after one dot product per null vector.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _nullspace(a, m, p, inv, out):
    """Null space of the leading ``m x m`` block of ``a`` into the rows of ``out``; returns its dimension."""
    w = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        for k in range(m):
            w[i, k] = a[i, k] % p
    pivcol = np.full(m, -1, dtype=np.int64)
    is_piv = np.zeros(m, dtype=np.bool_)
    r = 0
    for c in range(m):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if w[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(m):
                tmp = w[r, k]
                w[r, k] = w[piv, k]
                w[piv, k] = tmp
        s = inv[w[r, c]]
        for k in range(m):
            w[r, k] = (w[r, k] * s) % p
        for i in range(m):
            if i != r and w[i, c] != 0:
                f = w[i, c]
                for k in range(m):
                    w[i, k] = (w[i, k] - f * w[r, k]) % p
        pivcol[r] = c
        is_piv[c] = True
        r += 1
    q = 0
    for f in range(m):
        if is_piv[f]:
            continue
        for k in range(m):
            out[q, k] = 0
        out[q, f] = 1
        for i in range(r):
            out[q, pivcol[i]] = (p - w[i, f]) % p
        q += 1
    return q


@njit(cache=True)
def search(n, p, free_start, free_len, free_pos, fixed_pos, mode, stop_at,
           split, lo, hi):
    """Depth-first search over all assignments; returns ``(rank, choices, nodes)``.

    ``mode`` 0 minimizes and 1 maximizes, stopping once ``stop_at`` is reached;
    mode 2 looks for the first assignment of rank exactly ``stop_at``.
    ``choices[j]`` is the odometer index used at vertex ``j``.  Only strict
    improvements replace the incumbent, so the lexicographically first
    optimum is the one reported.  ``rank`` is -1 when nothing qualifies.
    """
    maximize = mode == 1
    exact = mode == 2
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        y = 1
        e = p - 2
        b = x
        while e > 0:
            if e & 1:
                y = (y * b) % p
            b = (b * b) % p
            e >>= 1
        inv[x] = y
    top = n - n % 2
    a = np.zeros((n, n), dtype=np.int64)
    null = np.zeros((n + 1, n, n), dtype=np.int64)
    q = np.zeros(n + 1, dtype=np.int64)
    rank = np.zeros(n + 1, dtype=np.int64)
    idx = np.zeros(n, dtype=np.int64)
    end = np.zeros(n, dtype=np.int64)
    choices = np.zeros(n, dtype=np.int64)
    best_choices = np.zeros(n, dtype=np.int64)
    digits = np.zeros(n, dtype=np.int64)
    count = np.ones(n, dtype=np.int64)
    for j in range(n):
        for _ in range(free_len[j]):
            count[j] *= p - 1
    best = -1
    nodes = 0
    if n <= 1:
        if exact and stop_at != 0:
            return -1, best_choices, 0
        return 0, best_choices, 0

    null[1, 0, 0] = 1
    q[1] = 1
    j = 1
    idx[1] = lo if split == 1 else 0
    end[1] = hi if split == 1 else count[1]
    nodes = 1
    while j >= 1:
        if idx[j] >= end[j]:
            j -= 1
            if j >= 1:
                idx[j] += 1
            continue
        # decode the odometer index into column j (most significant digit first)
        t = idx[j]
        fl = free_len[j]
        for d in range(fl - 1, -1, -1):
            digits[d] = t % (p - 1)
            t //= p - 1
        fs = free_start[j]
        for d in range(fl):
            i = free_pos[fs + d]
            v = digits[d] + 1
            a[i, j] = v
            a[j, i] = p - v
        if fixed_pos[j] >= 0:
            a[fixed_pos[j], j] = 1
            a[j, fixed_pos[j]] = p - 1
        grow = False
        for z in range(q[j]):
            s = 0
            for i in range(j):
                s += null[j, z, i] * a[i, j]
            if s % p != 0:
                grow = True
                break
        r = rank[j] + (2 if grow else 0)
        choices[j] = idx[j]
        if exact:
            if r > stop_at:
                idx[j] += 1
                continue
            if j == n - 1:
                if r == stop_at:
                    best = r
                    for k in range(n):
                        best_choices[k] = choices[k]
                    break
                idx[j] += 1
                continue
        elif j == n - 1:
            better = best < 0 or (r > best if maximize else r < best)
            if better:
                best = r
                for k in range(n):
                    best_choices[k] = choices[k]
                if best >= stop_at if maximize else best <= stop_at:
                    break
            # later leaves under this parent cannot do strictly better
            if (maximize and grow) or (not maximize and not grow):
                idx[j] = end[j]
            else:
                idx[j] += 1
            continue
        if best >= 0:
            if maximize:
                cap = r + 2 * (n - 1 - j)
                if cap > top:
                    cap = top
                if cap <= best:
                    idx[j] += 1
                    continue
            elif r >= best:
                idx[j] += 1
                continue
        nodes += 1
        q[j + 1] = _nullspace(a, j + 1, p, inv, null[j + 1])
        rank[j + 1] = r
        j += 1
        idx[j] = lo if split == j else 0
        end[j] = hi if split == j else count[j]
    return best, best_choices, nodes
