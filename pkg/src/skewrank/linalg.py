"""Exact linear algebra over GF(p), p an odd prime, for skew-symmetric matrices.

The centrepiece is :func:`min_rank_exhaustive`, a branch-and-bound search over
every matrix whose off-diagonal support is a given graph.  It is the ground
truth that the structural rules in :mod:`skewrank.engine` are checked against.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernel
from .graph import Graph, components

DEFAULT_BUDGET = 10 ** 8

MINIMIZE, MAXIMIZE, EXACT = 0, 1, 2


class FieldError(ValueError):
    pass


class MissingEdgeValue(FieldError):
    pass


class ZeroValue(FieldError):
    pass


class ExtraValue(FieldError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, size: int, budget: int):
        super().__init__(f"search space of {size} assignments exceeds budget {budget}")
        self.size = size
        self.budget = budget


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise FieldError(f"need an odd prime modulus, got {self.p}")

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)


def _as_field(field) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(int(field))


# -- elimination ------------------------------------------------------------

def rref_mod_p(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns.

    Pivots are taken as the first nonzero entry in column order.
    """
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(mat, p: int) -> int:
    a = np.asarray(mat)
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


def nullspace_mod_p(mat, p: int) -> np.ndarray:
    """Basis of the right null space as the rows of the returned array."""
    a = np.asarray(mat, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    red, pivots = rref_mod_p(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-red[r, f]) % p
    return basis


# -- matrices described by a graph --------------------------------------------

def support_of(entries: np.ndarray) -> Graph:
    n = entries.shape[0]
    return Graph(n, frozenset(
        (i, j) for i in range(n) for j in range(i + 1, n) if entries[i, j] != 0))


class SkewMatrix:
    """A skew-symmetric matrix over GF(p) together with the graph it describes."""

    def __init__(self, field, entries, support: Optional[Graph] = None):
        self.field = _as_field(field)
        p = self.field.p
        a = np.array(entries, dtype=np.int64) % p
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise FieldError("entries must form a square matrix")
        if np.any((a + a.T) % p):
            raise FieldError("matrix is not skew-symmetric")
        derived = support_of(a)
        if support is not None and support != derived:
            raise FieldError("nonzero pattern does not match the support graph")
        a.setflags(write=False)
        self.entries = a
        self.support = derived if support is None else support

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def p(self) -> int:
        return self.field.p

    def rank(self) -> int:
        return rank_skew(self)

    def permuted(self, perm) -> "SkewMatrix":
        """Simultaneous row/column relabelling: vertex ``v`` becomes ``perm[v]``."""
        inv = np.argsort(np.asarray(perm))
        return SkewMatrix(self.field, self.entries[np.ix_(inv, inv)])

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "entries": self.entries.tolist()}

    @classmethod
    def from_json(cls, obj) -> "SkewMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        entries = np.array(obj["entries"], dtype=np.int64).reshape(obj["n"], obj["n"])
        if np.any((entries < 0) | (entries >= obj["p"])):
            raise FieldError("serialized entries must lie in [0, p)")
        return cls(obj["p"], entries)

    def __eq__(self, other):
        return (isinstance(other, SkewMatrix) and self.p == other.p
                and np.array_equal(self.entries, other.entries))

    def __repr__(self):
        return f"SkewMatrix(p={self.p}, entries={self.entries.tolist()})"


@dataclass(frozen=True)
class RankWitness:
    rank: int
    matrix: SkewMatrix

    def __post_init__(self):
        if self.rank % 2:
            raise FieldError(f"skew rank must be even, got {self.rank}")

    def verify(self) -> bool:
        return rank_skew(self.matrix) == self.rank

    def to_json(self) -> dict:
        return {"rank": self.rank, **self.matrix.to_json()}


def rank_skew(a: SkewMatrix) -> int:
    """Rank over GF(p) by exact elimination."""
    return rank_mod_p(a.entries, a.p)


def matrix_from_assignment(g: Graph, field, values: dict) -> SkewMatrix:
    """Matrix with ``A[i][j] = values[(i, j)]`` and ``A[j][i] = -values[(i, j)]`` for edges ``i < j``."""
    field = _as_field(field)
    p = field.p
    vals = {}
    for e, x in values.items():
        u, v = e
        key = (min(u, v), max(u, v))
        if key not in g.edges:
            raise ExtraValue(f"value given for non-edge {e}")
        if x % p == 0:
            raise ZeroValue(f"edge {e} is assigned zero")
        vals[key] = x % p
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for e in g.sorted_edges():
        if e not in vals:
            raise MissingEdgeValue(f"no value for edge {e}")
        i, j = e
        a[i, j] = vals[e]
        a[j, i] = (-vals[e]) % p
    return SkewMatrix(field, a, g)


def random_skew_matrix(g: Graph, field, rng: np.random.Generator) -> SkewMatrix:
    field = _as_field(field)
    values = {e: int(rng.integers(1, field.p)) for e in g.sorted_edges()}
    return matrix_from_assignment(g, field, values)


# -- exhaustive search ------------------------------------------------------

class _Plan:
    """Vertex order, fixed tree entries and per-vertex free positions for the odometer.

    Internal vertex ``j`` is original vertex ``order[j]``.  Column ``j`` of the
    strictly upper triangle holds the entries from earlier vertices; the tree
    entry (if normalizing) is fixed to 1 and the rest range over ``1..p-1``,
    lexicographically with the smallest row most significant.
    """

    def __init__(self, g: Graph, p: int, normalize: bool):
        self.g, self.p, self.n = g, p, g.n
        self.normalize = normalize
        order, parent = [], {}
        for comp in components(g):
            root = min(sorted(comp), key=g.degree)
            seen = {root}
            queue = [root]
            while queue:
                u = queue.pop(0)
                order.append(u)
                for w in sorted(g.neighbors(u), key=lambda x: (g.degree(x), x)):
                    if w not in seen:
                        seen.add(w)
                        parent[w] = u
                        queue.append(w)
        self.order = order
        pos = {v: i for i, v in enumerate(order)}
        self.fixed = []
        self.free = []
        for j, v in enumerate(order):
            back = sorted(pos[u] for u in g.neighbors(v) if pos[u] < j)
            fix = pos[parent[v]] if normalize and v in parent else -1
            self.fixed.append(fix)
            self.free.append([i for i in back if i != fix])
        self.n_free = sum(len(f) for f in self.free)
        self.split = next((j for j in range(1, self.n) if self.free[j]), -1)

    def size(self) -> int:
        return (self.p - 1) ** self.n_free

    def level_count(self, j: int) -> int:
        return (self.p - 1) ** len(self.free[j])

    def arrays(self):
        lens = np.array([len(f) for f in self.free], dtype=np.int64)
        starts = np.concatenate([[0], np.cumsum(lens)[:-1]]).astype(np.int64)
        flat = np.array([i for f in self.free for i in f] or [0], dtype=np.int64)
        fixed = np.array(self.fixed, dtype=np.int64)
        return starts, lens, flat, fixed

    def column(self, j: int, index: int) -> np.ndarray:
        col = np.zeros(j, dtype=np.int64)
        f = self.free[j]
        for d in range(len(f) - 1, -1, -1):
            col[f[d]] = index % (self.p - 1) + 1
            index //= self.p - 1
        if self.fixed[j] >= 0:
            col[self.fixed[j]] = 1
        return col

    def witness(self, choices) -> SkewMatrix:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for j in range(1, self.n):
            col = self.column(j, int(choices[j]))
            a[:j, j] = col
            a[j, :j] = (-col) % self.p
        back = np.empty(self.n, dtype=np.int64)
        back[self.order] = np.arange(self.n)
        # original (u, v) sits at internal (pos u, pos v)
        a = a[np.ix_(back, back)]
        return SkewMatrix(self.p, a, self.g)

    def run(self, mode: int, stop_at: int, lo: int = 0, hi: Optional[int] = None,
            stats: Optional["SearchStats"] = None):
        if self.n <= 1:
            found = mode != EXACT or stop_at == 0
            return (0 if found else None), np.zeros(max(self.n, 1), dtype=np.int64)
        if hi is None:
            hi = self.level_count(self.split) if self.split > 0 else 1
        starts, lens, flat, fixed = self.arrays()
        rank, choices, nodes = _kernel.search(
            self.n, self.p, starts, lens, flat, fixed, mode, stop_at,
            self.split, lo, hi)
        if stats is not None:
            stats.nodes += int(nodes)
        return (None if rank < 0 else int(rank)), choices.copy()


@dataclass
class SearchStats:
    nodes: int = 0


def _check_budget(plan: _Plan, budget: Optional[int]):
    if budget is not None and plan.size() > budget:
        raise BudgetExceeded(plan.size(), budget)


def search_space_size(g: Graph, field, normalize: bool = True) -> int:
    """Number of odometer assignments the exhaustive searches range over."""
    return _Plan(g, _as_field(field).p, normalize).size()


def within_budget(g: Graph, field, budget: Optional[int] = DEFAULT_BUDGET) -> bool:
    return budget is None or search_space_size(g, field) <= budget


def min_rank_exhaustive(g: Graph, field, *, lower_bound: Optional[int] = None,
                        normalize: bool = True, budget: Optional[int] = DEFAULT_BUDGET,
                        workers: int = 1, stats: Optional[SearchStats] = None) -> RankWitness:
    """Exact minimum rank over all skew matrices described by ``g``, with a witness.

    Every tree edge of a BFS spanning forest is fixed to 1 when ``normalize`` is
    set; diagonal congruence ``D A D`` preserves rank and support, so nothing is
    lost.  ``budget`` bounds the number of assignments of the remaining edges.
    The search stops as soon as it meets ``lower_bound``, so the answer is only
    as good as that bound; leave it out to get an unconditional result.
    """
    field = _as_field(field)
    plan = _Plan(g, field.p, normalize)
    _check_budget(plan, budget)
    floor = 0 if g.is_empty() else 2
    if lower_bound is not None:
        floor = max(floor, lower_bound)
    if workers > 1:
        rank, choices = _partitioned(plan, MINIMIZE, floor, workers)
    else:
        rank, choices = plan.run(MINIMIZE, floor, stats=stats)
    return RankWitness(rank, plan.witness(choices))


def max_rank_exhaustive(g: Graph, field, *, normalize: bool = True,
                        budget: Optional[int] = DEFAULT_BUDGET,
                        workers: int = 1) -> RankWitness:
    """Exact maximum rank over all skew matrices described by ``g``, with a witness."""
    field = _as_field(field)
    plan = _Plan(g, field.p, normalize)
    _check_budget(plan, budget)
    ceiling = g.n - g.n % 2
    if workers > 1:
        rank, choices = _partitioned(plan, MAXIMIZE, ceiling, workers)
    else:
        rank, choices = plan.run(MAXIMIZE, ceiling)
    return RankWitness(rank, plan.witness(choices))


def find_rank_exhaustive(g: Graph, field, target: int, *,
                         budget: Optional[int] = DEFAULT_BUDGET) -> Optional[RankWitness]:
    """First matrix (in odometer order) described by ``g`` with rank exactly ``target``, or None."""
    field = _as_field(field)
    plan = _Plan(g, field.p, True)
    _check_budget(plan, budget)
    rank, choices = plan.run(EXACT, target)
    return None if rank is None else RankWitness(rank, plan.witness(choices))


def _range_worker(args):
    g, p, normalize, mode, stop_at, lo, hi = args
    return _Plan(g, p, normalize).run(mode, stop_at, lo, hi)


def partition_ranges(plan: _Plan, parts: int) -> list[tuple[int, int]]:
    """Contiguous slices of the first branching level, in odometer order."""
    if plan.split < 0:
        return [(0, 1)]
    total = plan.level_count(plan.split)
    cuts = np.linspace(0, total, min(parts, total) + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(cuts[:-1], cuts[1:])]


def _partitioned(plan: _Plan, mode: int, stop_at: int, workers: int):
    if plan.split < 0 or plan.n <= 1:
        return plan.run(mode, stop_at)
    jobs = [(plan.g, plan.p, plan.normalize, mode, stop_at, lo, hi)
            for lo, hi in partition_ranges(plan, workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_range_worker, jobs))
    return merge_partial_results(results, mode == MAXIMIZE)


def merge_partial_results(results, maximize: bool):
    """Combine per-range results listed in odometer order; the earliest optimum wins."""
    best = None
    for rank, choices in results:
        if rank is None:
            continue
        if best is None or (rank > best[0] if maximize else rank < best[0]):
            best = (rank, choices)
    return best


def max_rank_sample(g: Graph, field, trials: int, seed: int = 0) -> int:
    """Largest rank seen over ``trials`` uniformly random matrices described by ``g``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    field = _as_field(field)
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(trials):
        best = max(best, rank_skew(random_skew_matrix(g, field, rng)))
    return best
