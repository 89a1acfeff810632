"""Simple undirected graphs and the structural queries the rank rules dispatch on.

Vertices are the integers ``0..n-1``.  Every function here is pure; a
:class:`Graph` is immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional


class GraphError(ValueError):
    pass


class OutOfRange(GraphError):
    pass


class NotACutVertex(GraphError):
    pass


class Disconnected(GraphError):
    pass


class TooLarge(GraphError):
    pass


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()
    _adj: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise OutOfRange(f"edge {e} has an endpoint outside [0, {self.n})")
            norm.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        adj = [set() for _ in range(self.n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    # -- basic queries ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def complement(self) -> "Graph":
        return Graph(self.n, frozenset(
            e for e in combinations(range(self.n), 2) if e not in self.edges))

    def is_empty(self) -> bool:
        """True when the graph has no edges (it may still have vertices)."""
        return not self.edges

    def adjacency_bits(self) -> list[int]:
        """Neighbourhoods as bitmasks, ``bits[v] >> u & 1`` iff ``uv`` is an edge."""
        bits = [0] * self.n
        for u, v in self.edges:
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        return bits

    def relabel(self, perm) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, frozenset(_norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def __str__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# -- constructors ----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset(_norm_edge(i, (i + 1) % n) for i in range(n)))


def complete_multipartite(*sizes: int) -> Graph:
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    n = len(part)
    return Graph(n, frozenset(
        (u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def path_power(n: int, k: int) -> Graph:
    """The k-th power of the path 0-1-...-(n-1); ``K_n`` once ``k >= n-1``."""
    if n < 1 or k < 1:
        raise GraphError("path_power needs n >= 1 and k >= 1")
    return Graph(n, frozenset(
        (i, j) for i in range(n) for j in range(i + 1, min(n, i + k + 1))))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, frozenset(edges))


# -- subgraphs ---------------------------------------------------------------

def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``vertices``, relabelled ``0..|X|-1`` in increasing order.

    Returns the graph and the vertex map: ``vmap[i]`` is the original label of new vertex ``i``.
    """
    vmap = tuple(sorted(set(vertices)))
    for v in vmap:
        if not 0 <= v < g.n:
            raise OutOfRange(f"vertex {v} is not in a graph on {g.n} vertices")
    index = {v: i for i, v in enumerate(vmap)}
    edges = frozenset(
        (index[u], index[v]) for u, v in g.edges if u in index and v in index)
    return Graph(len(vmap), edges), vmap


def delete_vertex(g: Graph, v: int) -> tuple[Graph, tuple[int, ...]]:
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} is not in a graph on {g.n} vertices")
    return induced_subgraph(g, (u for u in range(g.n) if u != v))


# -- connectivity ------------------------------------------------------------

def components(g: Graph) -> list[frozenset]:
    """Connected components ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
                    comp.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def _dfs_lowpoints(g: Graph):
    """Iterative Hopcroft-Tarjan pass yielding cut vertices and blocks (as edge sets)."""
    disc = [-1] * g.n
    low = [0] * g.n
    cuts = set()
    blocks = []
    t = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        edge_stack = []
        stack = [(root, -1, iter(sorted(g.neighbors(root))))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    edge_stack.append(_norm_edge(u, w))
                    stack.append((w, u, iter(sorted(g.neighbors(w)))))
                    if u == root:
                        root_children += 1
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    low[u] = min(low[u], disc[w])
                    edge_stack.append(_norm_edge(u, w))
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                block = set()
                stop = _norm_edge(parent, u)
                while True:
                    e = edge_stack.pop()
                    block.add(e)
                    if e == stop:
                        break
                blocks.append(frozenset(block))
        if root_children >= 2:
            cuts.add(root)
    return cuts, blocks


def cut_vertices(g: Graph) -> frozenset:
    """Vertices whose deletion increases the number of connected components."""
    return frozenset(_dfs_lowpoints(g)[0])


def blocks(g: Graph) -> list[frozenset]:
    """Edge sets of the blocks (maximal 2-connected pieces and bridges)."""
    return _dfs_lowpoints(g)[1]


@dataclass(frozen=True)
class BranchDecomposition:
    """Branches of a connected graph at a cut vertex.

    ``branches[i]`` is a subgraph in the labels of ``vmaps[i]``; the cut vertex is
    ``local_cut[i]`` inside branch ``i``.
    """

    cut_vertex: int
    branches: tuple
    vmaps: tuple
    local_cut: tuple

    @property
    def h(self) -> int:
        return len(self.branches)


def branches_at(g: Graph, v: int) -> BranchDecomposition:
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} is not in a graph on {g.n} vertices")
    if not is_connected(g):
        raise Disconnected("branches_at needs a connected graph")
    rest, rest_map = delete_vertex(g, v)
    comps = components(rest)
    if len(comps) < 2:
        raise NotACutVertex(f"deleting vertex {v} does not disconnect the graph")
    branches, vmaps, local = [], [], []
    for comp in comps:
        verts = {rest_map[i] for i in comp} | {v}
        sub, vmap = induced_subgraph(g, verts)
        branches.append(sub)
        vmaps.append(vmap)
        local.append(vmap.index(v))
    return BranchDecomposition(v, tuple(branches), tuple(vmaps), tuple(local))


# -- graph classes -----------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        seen = set()
        for part in self.parts:
            if not part:
                raise GraphError("partition parts must be nonempty")
            if seen & part:
                raise GraphError("partition parts must be disjoint")
            seen |= part

    @property
    def t(self) -> int:
        return len(self.parts)


def is_complete_multipartite(g: Graph) -> Optional[Partition]:
    """Partition into independent parts with every cross pair adjacent, if one exists.

    A single part is rejected, so edgeless graphs on two or more vertices return None.
    ``K_1`` returns its single part (it is ``K_{1}``).
    """
    if g.n == 0:
        return None
    parts = components(g.complement())
    if len(parts) < 2 and g.n > 1:
        return None
    bits = g.adjacency_bits()
    for part in parts:
        # each part must be a clique in the complement, i.e. independent in g
        for u in part:
            for w in part:
                if u != w and bits[u] >> w & 1:
                    return None
    return Partition(tuple(sorted(parts, key=min)))


def has_even_cycle(g: Graph) -> bool:
    """Decided blockwise: no even cycle iff every block is a bridge or an odd cycle."""
    for block in blocks(g):
        verts = {x for e in block for x in e}
        if len(block) == 1:
            continue
        if len(block) != len(verts) or len(verts) % 2 == 0:
            return True
    return False


def is_clique(g: Graph, vertices) -> bool:
    vs = list(vertices)
    return all(g.has_edge(u, w) for u, w in combinations(vs, 2))


@dataclass(frozen=True)
class KPathLabeling:
    """``order[i]`` is the vertex carrying label ``v_{i+1}``."""

    k: int
    order: tuple


def _kpath_parameter(n: int, m: int) -> Optional[int]:
    # a k-path on n >= k+1 vertices has k(k+1)/2 + (n-k-1)k edges, strictly increasing in k
    for k in range(1, n):
        if k * (2 * n - k - 1) == 2 * m:
            return k
    return None


def recognize_k_path(g: Graph) -> Optional[tuple[int, KPathLabeling]]:
    """Return ``(k, labeling)`` if ``g`` is a k-path, else None.

    The edge count pins ``k`` uniquely, so the smallest admissible ``k`` is the only one.
    Labels are assigned from ``v_n`` downward by peeling degree-k simplicial vertices,
    each time moving to the unique neighbour of degree ``k+1``.
    """
    n = g.n
    if n < 2 or not is_connected(g):
        return None
    k = _kpath_parameter(n, g.m)
    if k is None:
        return None
    if n == k + 1:
        return k, KPathLabeling(k, tuple(range(n)))

    ends = [v for v in range(n) if g.degree(v) == k]
    if len(ends) != 2:
        return None
    alive = set(range(n))
    deg = {v: g.degree(v) for v in range(n)}
    labels = []
    cur = ends[0]
    while len(alive) > k + 1:
        if deg[cur] != k:
            return None
        nbrs = [w for w in g.neighbors(cur) if w in alive]
        if not is_clique(g, nbrs):
            return None
        if len(alive) >= k + 3:
            # H - cur must again have exactly two degree-k vertices
            nxt = [w for w in nbrs if deg[w] == k + 1]
            if len(nxt) != 1:
                return None
            nxt = nxt[0]
        else:
            nxt = None
        labels.append(cur)
        alive.discard(cur)
        for w in nbrs:
            deg[w] -= 1
        if nxt is not None:
            cur = nxt
    if not is_clique(g, alive):
        return None
    other = ends[1]
    if other not in alive:
        return None
    v2 = sorted(w for w in alive if w != other and g.degree(w) == k + 1)
    if not v2:
        return None
    head = [other, v2[0]] + sorted(alive - {other, v2[0]})
    order = tuple(head + labels[::-1])
    return k, KPathLabeling(k, order)


def check_kpath_labeling(g: Graph, lab: KPathLabeling) -> list[str]:
    """Names of the labeling invariants that ``lab`` violates on ``g`` (empty if none)."""
    k, order = lab.k, lab.order
    n = g.n
    bad = []
    if sorted(order) != list(range(n)):
        return ["not a permutation"]
    if not is_clique(g, order[:k + 1]):
        bad.append("first k+1 vertices are not a clique")
    for j in range(k + 1, n):
        back = [u for u in order[:j] if g.has_edge(u, order[j])]
        if len(back) != k or not is_clique(g, back):
            bad.append(f"vertex at position {j + 1} has a bad back-neighbourhood")
            break
    if n >= k + 2 and sum(1 for v in range(n) if g.degree(v) == k) != 2:
        bad.append("degree-k vertex count is not two")
    for i in range(n):
        for j in range(max(i + 1, k + 1), n):
            if not g.has_edge(order[i], order[j]):
                if any(g.has_edge(order[i], order[l]) for l in range(j + 1, n)):
                    bad.append("non-adjacency does not propagate")
                    break
        else:
            continue
        break
    return bad


# -- enumeration and canonical forms ----------------------------------------

ENUM_MAX_N = 8


def _refined_cells(bits: list[int], n: int) -> list[list[int]]:
    """Ordered cells of the stable colour-refinement partition (isomorphism invariant)."""
    nbrs = [[w for w in range(n) if b >> w & 1] for b in bits]
    colour = [len(x) for x in nbrs]
    count = len(set(colour))
    while True:
        sig = [(colour[v], tuple(sorted([colour[w] for w in nbrs[v]]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        colour = [ranks[s] for s in sig]
        # refinement only ever splits cells, so an unchanged count means stable
        if len(ranks) == count:
            break
        count = len(ranks)
    cells = [[] for _ in range(count)]
    for v in range(n):
        cells[colour[v]].append(v)
    return cells


def _canonical_code(bits: list[int], n: int) -> int:
    cells = _refined_cells(bits, n)
    slots = [cell for cell in cells for _ in cell]
    total = n * (n - 1) // 2
    best = -1
    order = []
    used = 0

    def rec(j: int, code: int):
        # code holds columns 1..j-1 of the upper triangle, most significant first
        nonlocal best, used
        if j == n:
            if best < 0 or code < best:
                best = code
            return
        prefix = -1 if best < 0 else best >> (total - j * (j + 1) // 2)
        for v in slots[j]:
            if used >> v & 1:
                continue
            col = 0
            for u in order:
                col = (col << 1) | (bits[u] >> v & 1)
            new = (code << j) | col
            if prefix >= 0 and new > prefix:
                continue
            used |= 1 << v
            order.append(v)
            rec(j + 1, new)
            order.pop()
            used &= ~(1 << v)
            if best >= 0:
                prefix = best >> (total - j * (j + 1) // 2)

    rec(0, 0)
    return best


def canonical_form(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant key ``(n, code)``.

    ``code`` is the smallest upper-triangle bit string (column order
    ``01, 02, 12, 03, 13, 23, ...``) over all vertex orders that list the
    colour-refinement cells in their canonical order.  The search prunes on
    prefixes, so it is exhaustive over those orders without visiting them all.
    """
    if g.n <= 1:
        return (g.n, 0)
    return (g.n, _canonical_code(g.adjacency_bits(), g.n))


def graph_from_canonical(key: tuple[int, int]) -> Graph:
    n, code = key
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    total = len(pairs)
    edges = [pairs[t] for t in range(total) if code >> (total - 1 - t) & 1]
    return Graph(n, frozenset(edges))


def canonical_graph(g: Graph) -> Graph:
    return graph_from_canonical(canonical_form(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)


def _code_to_bits(code: int, n: int) -> list[int]:
    bits = [0] * n
    t = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            t -= 1
            if code >> t & 1:
                bits[i] |= 1 << j
                bits[j] |= 1 << i
    return bits


def _all_iso_classes(n: int) -> list[tuple[int, int]]:
    # grow canonical representatives one vertex at a time
    codes = {0}
    for size in range(2, n + 1):
        nxt = set()
        new = size - 1
        for code in codes:
            base = _code_to_bits(code, new) + [0]
            for mask in range(1 << new):
                bits = base[:]
                bits[new] = mask
                for u in range(new):
                    if mask >> u & 1:
                        bits[u] |= 1 << new
                nxt.add(_canonical_code(bits, size))
        codes = nxt
    return [(n, c) for c in sorted(codes)]


_ISO_CACHE: dict[int, list] = {}


def enumerate_graphs(n: int, connected_only: bool = False, up_to_iso: bool = True) -> Iterator[Graph]:
    """Yield graphs on ``n`` vertices (1 <= n <= 8).

    With ``up_to_iso`` each isomorphism class appears once, as its canonical
    representative, in increasing canonical order.  Otherwise every labelled
    graph is produced in bitmask order.
    """
    if not 1 <= n <= ENUM_MAX_N:
        raise TooLarge(f"enumerate_graphs supports 1 <= n <= {ENUM_MAX_N}, got {n}")
    if up_to_iso:
        if n not in _ISO_CACHE:
            _ISO_CACHE[n] = _all_iso_classes(n)
        for key in _ISO_CACHE[n]:
            g = graph_from_canonical(key)
            if not connected_only or is_connected(g):
                yield g
        return
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        if not connected_only or is_connected(g):
            yield g


def brute_canonical_form(g: Graph) -> tuple[int, int]:
    """Minimum bit string over all n! orders; reference for small n only."""
    n = g.n
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    best = None
    for perm in permutations(range(n)):
        code = 0
        for i, j in pairs:
            code = (code << 1) | g.has_edge(perm[i], perm[j])
        if best is None or code < best:
            best = code
    return (n, best if best is not None else 0)
