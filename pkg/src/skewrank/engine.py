"""Minimum skew rank from structure: exact values where a rule applies, bounds otherwise.

Rules are tried in a fixed order on each connected component:

====  =============================================  ==============
R0    disjoint union: ranks add over components       any field
R1    no edges: rank 0                                any field
R2    complete multipartite: rank 2                   generic only
R3    connected, no even cycle: 2 * match             any field
R4    unique perfect matching: rank n                 any field
R5    k-path on n vertices: n-k rounded up to even    generic only
R6    cut vertex recursion over the branches          any field
R7    n - Z(G) <= mr <= 2 * match                      any field
====  =============================================  ==============

"Generic" stands for an infinite (or large enough) field.  In finite mode
the generic-only rules are skipped, and the exhaustive oracle may be asked
for explicitly to settle what the rules leave open.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .combinat import count_perfect_matchings, matching_number, zero_forcing_number
from .graph import (
    Graph,
    GraphError,
    branches_at,
    components,
    cut_vertices,
    delete_vertex,
    has_even_cycle,
    induced_subgraph,
    is_complete_multipartite,
    is_connected,
    recognize_k_path,
)
from .linalg import (
    DEFAULT_BUDGET,
    PrimeField,
    RankWitness,
    SkewMatrix,
    find_rank_exhaustive,
    max_rank_exhaustive,
    min_rank_exhaustive,
    random_skew_matrix,
    rank_skew,
)


class EngineError(ValueError):
    pass


class Inexact(EngineError):
    pass


class BadParameters(EngineError):
    pass


class NoCutVertex(EngineError):
    pass


class NotAchievable(EngineError):
    def __init__(self, message: str, reason: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class FieldSpec:
    mode: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.mode == "finite":
            PrimeField(self.p)
        elif self.mode == "generic":
            if self.p is not None:
                raise EngineError("generic mode takes no modulus")
        else:
            raise EngineError(f"unknown field mode {self.mode!r}")

    @classmethod
    def finite(cls, p: int) -> "FieldSpec":
        return cls("finite", p)

    @classmethod
    def generic(cls) -> "FieldSpec":
        return cls("generic")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        if text == "generic":
            return cls.generic()
        try:
            return cls.finite(int(text))
        except ValueError as exc:
            raise EngineError(f"field must be an odd prime or 'generic', got {text!r}") from exc

    @property
    def is_generic(self) -> bool:
        return self.mode == "generic"

    def __str__(self):
        return "generic" if self.is_generic else f"GF({self.p})"


def _graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


@dataclass
class TraceStep:
    rule: str
    graph: Graph
    value: Optional[int]
    detail: dict = field(default_factory=dict)
    children: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"rule": self.rule, "subgraph": _graph_json(self.graph), "value": self.value}
        if self.detail:
            out["detail"] = self.detail
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class RankResult:
    lower: int
    upper: int
    exact: Optional[int] = None
    trace: list = field(default_factory=list)
    certificate: Optional[RankWitness] = None

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise EngineError(f"bad bounds [{self.lower}, {self.upper}]")
        if self.lower % 2 or self.upper % 2:
            raise EngineError("skew rank bounds must be even")
        if self.exact is not None and not self.lower == self.upper == self.exact:
            raise EngineError("exact value must equal both bounds")
        if self.certificate is not None and self.certificate.rank != self.exact:
            raise EngineError("certificate rank differs from the exact value")

    @property
    def nullity(self) -> Optional[int]:
        """Maximum skew nullity when the rank is known, else None."""
        if self.exact is None or not self.trace:
            return None
        return self.trace[0].graph.n - self.exact

    def to_json(self) -> dict:
        out = {"lower": self.lower, "upper": self.upper}
        if self.exact is not None:
            out["exact"] = self.exact
        out["trace"] = [s.to_json() for s in self.trace]
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _even_up(x: int) -> int:
    return x + (x % 2)


# -- bounds and closed forms -----------------------------------------------------

def mr_bounds(g: Graph) -> RankResult:
    """``n - Z(G)`` (rounded up to even, summed over components) and ``2 * match(G)``."""
    lower = 0
    zf = 0
    for comp in components(g):
        sub, _ = induced_subgraph(g, comp)
        z = zero_forcing_number(sub)[0]
        zf += z
        lower += _even_up(sub.n - z)
    match = matching_number(g)[0]
    upper = 2 * match
    step = TraceStep("R7-bounds", g, upper if lower == upper else None,
                     {"lower": lower, "upper": upper, "zero_forcing": zf, "match": match})
    return RankResult(lower, upper, upper if lower == upper else None, [step])


def kpath_mr(n: int, k: int) -> int:
    """Minimum skew rank of any k-path on ``n`` vertices over an infinite field."""
    if not (k >= 1 and n >= k + 1):
        raise BadParameters(f"need n >= k+1 >= 2, got n={n}, k={k}")
    return _even_up(n - k)


def path_power_mr(n: int, k: int) -> int:
    if n < 2 or k < 1:
        raise BadParameters(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    if k >= n:
        return 2
    return kpath_mr(n, k)


# -- the rule engine ---------------------------------------------------------------

class _Solver:
    def __init__(self, spec: FieldSpec, oracle: bool, budget: Optional[int]):
        if oracle and spec.is_generic:
            raise EngineError("the finite-field oracle cannot prove generic-field values")
        self.spec = spec
        self.oracle = oracle
        self.budget = budget

    def solve(self, g: Graph) -> RankResult:
        comps = components(g)
        if len(comps) > 1:
            return self._union(g, comps)
        return self._connected(g)

    def _union(self, g: Graph, comps) -> RankResult:
        parts = []
        for comp in comps:
            sub, vmap = induced_subgraph(g, comp)
            parts.append((self.solve(sub), vmap))
        lower = sum(r.lower for r, _ in parts)
        upper = sum(r.upper for r, _ in parts)
        exact = sum(r.exact for r, _ in parts) if all(r.exact is not None for r, _ in parts) else None
        step = TraceStep("R0-components", g, exact, {"components": len(parts)},
                         [r.trace[0] for r, _ in parts])
        if exact is not None:
            lower = upper = exact
        return RankResult(lower, upper, exact, [step])

    def _exact(self, g: Graph, rule: str, value: int, detail=None, children=None) -> RankResult:
        step = TraceStep(rule, g, value, detail or {}, children or [])
        return RankResult(value, value, value, [step])

    def _connected(self, g: Graph) -> RankResult:
        generic = self.spec.is_generic
        if g.is_empty():
            return self._exact(g, "R1-empty", 0)
        if generic:
            part = is_complete_multipartite(g)
            if part is not None:
                return self._exact(g, "R2-complete-multipartite", 2, {"parts": part.t})
        if not has_even_cycle(g):
            match = matching_number(g)[0]
            return self._exact(g, "R3-no-even-cycle", 2 * match, {"match": match})
        if count_perfect_matchings(g, cap=2) == 1:
            return self._exact(g, "R4-unique-perfect-matching", g.n)
        if generic:
            found = recognize_k_path(g)
            if found is not None:
                k, _ = found
                return self._exact(g, "R5-k-path", kpath_mr(g.n, k), {"k": k})
        for v in sorted(cut_vertices(g)):
            try:
                value, children = self._cut_vertex(g, v)
            except Inexact:
                continue
            return self._exact(g, "R6-cut-vertex", value, {"cut_vertex": v}, children)
        bounds = mr_bounds(g)
        if bounds.exact is not None:
            return self._exact(g, "R7-bounds", bounds.exact, bounds.trace[0].detail)
        if self.oracle:
            w = min_rank_exhaustive(g, self.spec.p, lower_bound=bounds.lower, budget=self.budget)
            step = TraceStep("oracle", g, w.rank, {"p": self.spec.p, **bounds.trace[0].detail})
            return RankResult(w.rank, w.rank, w.rank, [step], w)
        return bounds

    def _cut_vertex(self, g: Graph, v: int):
        dec = branches_at(g, v)
        children = []
        base, gain = 0, 0
        for branch, c in zip(dec.branches, dec.local_cut):
            rest, _ = delete_vertex(branch, c)
            r_rest = self.solve(rest)
            r_full = self.solve(branch)
            if r_rest.exact is None or r_full.exact is None:
                raise Inexact(f"branch at cut vertex {v} is not determined exactly")
            base += r_rest.exact
            gain += r_full.exact - r_rest.exact
            children.extend([r_rest.trace[0], r_full.trace[0]])
        return base + min(gain, 2), children


def mr_exact_structural(g: Graph, spec: FieldSpec, *, oracle: bool = False,
                        budget: Optional[int] = DEFAULT_BUDGET) -> RankResult:
    """Exact minimum skew rank when a rule settles it, bounds otherwise.

    With ``oracle`` (finite mode only) the exhaustive search closes any gap
    and every exact value comes with a certificate matrix.
    """
    result = _Solver(spec, oracle, budget).solve(g)
    if oracle and result.exact is not None and result.certificate is None:
        result.certificate = certify(g, result.exact, spec.p, budget=budget)
    return result


def _exact_or_raise(g: Graph, spec: FieldSpec, oracle: bool, budget) -> int:
    r = mr_exact_structural(g, spec, oracle=oracle, budget=budget)
    if r.exact is None:
        raise Inexact(f"minimum skew rank of {g} is only bounded in [{r.lower}, {r.upper}]")
    return r.exact


def r_v(g: Graph, v: int, spec: FieldSpec, *, oracle: bool = False,
        budget: Optional[int] = DEFAULT_BUDGET) -> int:
    """Rank drop ``mr(G) - mr(G - v)``; always 0 or 2."""
    rest, _ = delete_vertex(g, v)
    return _exact_or_raise(g, spec, oracle, budget) - _exact_or_raise(rest, spec, oracle, budget)


def cut_vertex_mr(g: Graph, v: int, spec: FieldSpec, *, oracle: bool = False,
                  budget: Optional[int] = DEFAULT_BUDGET) -> int:
    """Branch formula at cut vertex ``v``: sum of ``mr(G_i - v)`` plus ``min(sum r_v(G_i), 2)``."""
    value, _ = _Solver(spec, oracle, budget)._cut_vertex(g, v)
    return value


# -- rank four at a cut vertex --------------------------------------------------

NONEMPTY_MEANS = "has at least one edge"


@dataclass(frozen=True)
class Mr4Classification:
    """Outcome of the rank-four test at cut vertices.

    ``verdict`` is ``"CaseI"`` (two complete multipartite branches whose
    deleted forms are nonempty), ``"CaseII"`` (one nonempty complete
    multipartite component plus isolated vertices) or ``"No"``.
    """

    verdict: str
    cut_vertex: Optional[int]
    branches: tuple = ()
    component: Optional[Graph] = None
    isolated: int = 0
    nonempty_means: str = NONEMPTY_MEANS

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "cut_vertex": self.cut_vertex,
               "nonempty_means": self.nonempty_means}
        if self.branches:
            out["branches"] = [_graph_json(b) for b in self.branches]
        if self.component is not None:
            out["component"] = _graph_json(self.component)
            out["isolated"] = self.isolated
        return out


def _classify_at(g: Graph, v: int) -> Optional[Mr4Classification]:
    rest, vmap = delete_vertex(g, v)
    comps = components(rest)
    subs = [induced_subgraph(rest, c)[0] for c in comps]
    if len(comps) == 2 and all(not s.is_empty() for s in subs):
        branches = []
        for comp in comps:
            verts = {vmap[i] for i in comp} | {v}
            branch, _ = induced_subgraph(g, verts)
            if is_complete_multipartite(branch) is None:
                break
            branches.append(branch)
        else:
            return Mr4Classification("CaseI", v, branches=tuple(branches))
    nonempty = [s for s in subs if not s.is_empty()]
    isolated = sum(1 for s in subs if s.n == 1)
    if (len(nonempty) == 1 and isolated == len(subs) - 1 and isolated >= 1
            and is_complete_multipartite(nonempty[0]) is not None):
        return Mr4Classification("CaseII", v, component=nonempty[0], isolated=isolated)
    return None


def classify_mr4_cut_vertex(g: Graph) -> Mr4Classification:
    """Decide ``mr = 4`` (generic field) for a connected graph with a cut vertex."""
    if not is_connected(g):
        raise GraphError("classification needs a connected graph")
    cuts = sorted(cut_vertices(g))
    if not cuts:
        raise NoCutVertex("graph has no cut vertex")
    for v in cuts:
        found = _classify_at(g, v)
        if found is not None:
            return found
    return Mr4Classification("No", None)


# -- certificates ------------------------------------------------------------------

def certify(g: Graph, target: int, field, *, trials: int = 200, seed: int = 0,
            budget: Optional[int] = DEFAULT_BUDGET) -> RankWitness:
    """A matrix described by ``g`` over GF(p) with rank exactly ``target``.

    Random matrices are tried first, then the exhaustive odometer.  Failure
    raises :class:`NotAchievable` whose ``reason`` says whether ``target`` lies
    below the minimum, above the maximum, or in a gap between them.
    """
    field = field if isinstance(field, PrimeField) else PrimeField(int(field))
    if target % 2 or target < 0 or target > g.n:
        raise NotAchievable(f"rank {target} is impossible for a skew matrix of order {g.n}",
                            "impossible")
    if g.is_empty():
        if target == 0:
            return RankWitness(0, SkewMatrix(field, np.zeros((g.n, g.n), dtype=np.int64), g))
        raise NotAchievable("the only matrix described by an edgeless graph is zero",
                            "above-maximum")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        a = random_skew_matrix(g, field, rng)
        if rank_skew(a) == target:
            return RankWitness(target, a)
    found = find_rank_exhaustive(g, field, target, budget=budget)
    if found is not None:
        return found
    lo = min_rank_exhaustive(g, field, budget=budget).rank
    hi = max_rank_exhaustive(g, field, budget=budget).rank
    if target < lo:
        reason = "below-minimum"
    elif target > hi:
        reason = "above-maximum"
    else:
        reason = "gap"
    raise NotAchievable(
        f"no matrix over GF({field.p}) described by the graph has rank {target} "
        f"(ranks span [{lo}, {hi}])", reason)


# -- trace replay --------------------------------------------------------------

def replay_step(step: TraceStep, spec: FieldSpec) -> Optional[int]:
    """Recompute a trace step from its recorded sub-results; raises on mismatch."""
    g = step.graph
    rule = step.rule
    if rule == "R0-components":
        vals = [replay_step(c, spec) for c in step.children]
        value = None if any(v is None for v in vals) else sum(vals)
    elif rule == "R1-empty":
        value = 0 if g.is_empty() else None
    elif rule == "R2-complete-multipartite":
        value = 2 if spec.is_generic and is_complete_multipartite(g) is not None else None
    elif rule == "R3-no-even-cycle":
        value = 2 * matching_number(g)[0] if is_connected(g) and not has_even_cycle(g) else None
    elif rule == "R4-unique-perfect-matching":
        value = g.n if count_perfect_matchings(g, cap=2) == 1 else None
    elif rule == "R5-k-path":
        found = recognize_k_path(g) if spec.is_generic else None
        value = kpath_mr(g.n, found[0]) if found else None
    elif rule == "R6-cut-vertex":
        v = step.detail["cut_vertex"]
        dec = branches_at(g, v)
        if len(step.children) != 2 * dec.h:
            raise EngineError("cut-vertex step does not list every branch")
        vals = [replay_step(c, spec) for c in step.children]
        for (rest, full), branch, c in zip(zip(step.children[::2], step.children[1::2]),
                                           dec.branches, dec.local_cut):
            if full.graph != branch or rest.graph != delete_vertex(branch, c)[0]:
                raise EngineError("cut-vertex step children do not match the branches")
        base = sum(vals[::2])
        gain = sum(f - r for r, f in zip(vals[::2], vals[1::2]))
        value = base + min(gain, 2)
    elif rule == "R7-bounds":
        value = mr_bounds(g).exact
    elif rule == "oracle":
        value = min_rank_exhaustive(g, step.detail["p"], budget=None).rank
    else:
        raise EngineError(f"unknown rule {rule!r}")
    if value != step.value:
        raise EngineError(f"{rule} replays to {value}, trace says {step.value}")
    return value


def replay(result: RankResult, spec: FieldSpec) -> Optional[int]:
    """Re-derive the exact value of ``result`` from its trace alone."""
    values = [replay_step(s, spec) for s in result.trace]
    value = values[0] if values else None
    if value != result.exact:
        raise EngineError(f"trace replays to {value}, result says {result.exact}")
    return value
