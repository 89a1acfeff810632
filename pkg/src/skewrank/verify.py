"""Verification campaigns: structural claims checked against the exhaustive oracle.

Each campaign walks a family of small graphs, computes the claimed value
(from the rule engine or a closed form) and the ground truth (from the
oracle) and collects the outcome in a :class:`VerificationReport`.

Claims that only hold over large fields are run at several primes.  Such a
campaign counts a graph as a disagreement only when the largest prime
disagrees; mismatches at smaller primes are listed as informational.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable, Optional

import numpy as np

from .combinat import (
    ColoringState,
    count_perfect_matchings,
    forcing_closure,
    matching_number,
    zero_forcing_number,
)
from .engine import (
    FieldSpec,
    classify_mr4_cut_vertex,
    kpath_mr,
    mr_bounds,
    mr_exact_structural,
)
from .graph import (
    Graph,
    branches_at,
    canonical_form,
    check_kpath_labeling,
    complete_multipartite,
    cut_vertices,
    delete_vertex,
    enumerate_graphs,
    has_even_cycle,
    induced_subgraph,
    is_complete_multipartite,
    path_power,
    recognize_k_path,
)
from .linalg import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    max_rank_exhaustive,
    min_rank_exhaustive,
    random_skew_matrix,
    rank_skew,
    search_space_size,
)


class UnknownCampaign(KeyError):
    pass


def graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


@dataclass
class VerificationReport:
    family: str
    primes: list
    graphs_checked: int = 0
    agreements: int = 0
    disagreements: list = field(default_factory=list)
    informational: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    runtime: float = 0.0

    def __post_init__(self):
        if self.agreements + len(self.disagreements) != self.graphs_checked:
            raise ValueError("agreements and disagreements must add up to graphs_checked")

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "VerificationReport":
        return cls(**obj)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.family}: {status}  checked={self.graphs_checked} "
                f"agree={self.agreements} disagree={len(self.disagreements)} "
                f"informational={len(self.informational)} skipped={len(self.skipped)} "
                f"primes={self.primes} time={self.runtime:.1f}s")


@dataclass
class Outcome:
    """What one family member contributed to a report."""

    key: tuple
    checked: bool = True
    disagreements: list = field(default_factory=list)
    informational: list = field(default_factory=list)
    skipped: list = field(default_factory=list)


def _record(g: Graph, expected, got, prime, note: str = "") -> dict:
    out = {"graph": graph_json(g), "expected": expected, "got": got, "prime": prime}
    if note:
        out["note"] = note
    return out


# -- oracle with a per-process cache -------------------------------------------

_MIN_CACHE: dict = {}
_MAX_CACHE: dict = {}


def oracle_min(g: Graph, p: int, budget: Optional[int] = DEFAULT_BUDGET) -> int:
    """Exact minimum rank over GF(p), cached by isomorphism class."""
    key = (canonical_form(g), p)
    if key not in _MIN_CACHE:
        _MIN_CACHE[key] = min_rank_exhaustive(g, p, budget=budget).rank
    return _MIN_CACHE[key]


def oracle_max(g: Graph, p: int, budget: Optional[int] = DEFAULT_BUDGET) -> int:
    key = (canonical_form(g), p)
    if key not in _MAX_CACHE:
        _MAX_CACHE[key] = max_rank_exhaustive(g, p, budget=budget).rank
    return _MAX_CACHE[key]


def _try_min(g: Graph, p: int, budget, out: Outcome) -> Optional[int]:
    try:
        return oracle_min(g, p, budget)
    except BudgetExceeded as exc:
        out.skipped.append({"graph": graph_json(g), "prime": p,
                            "reason": f"search space {exc.size} over budget {exc.budget}"})
        return None


def _stabilized(g: Graph, primes, expected, got: dict, out: Outcome, note=""):
    """Largest computed prime decides; smaller primes only inform."""
    done = [p for p in sorted(primes) if got.get(p) is not None]
    if not done:
        out.checked = False
        return
    top = max(primes)
    if got.get(top) is None:
        out.checked = False
        return
    for p in done:
        if got[p] != expected:
            rec = _record(g, expected, got[p], p, note)
            (out.disagreements if p == top else out.informational).append(rec)


# -- families ------------------------------------------------------------------

def _connected(nmax: int, nmin: int = 1):
    for n in range(nmin, nmax + 1):
        yield from enumerate_graphs(n, connected_only=True)


def _with_cut_vertex(nmax: int):
    return [g for g in _connected(nmax, 3) if cut_vertices(g)]


# -- campaigns -----------------------------------------------------------------

def _kpath_family(params):
    return [(n, k) for k in range(1, params.get("kmax", 3) + 1)
            for n in range(k + 1, params.get("nmax", 9) + 1)]


def _kpath_check(item, params) -> Outcome:
    n, k = item
    g = path_power(n, k)
    out = Outcome((0, n, k))
    found = recognize_k_path(g)
    if found is None or found[0] != k:
        out.disagreements.append(_record(g, k, None if found is None else found[0], None,
                                         "k-path recognition"))
        return out
    lab = found[1]
    problems = check_kpath_labeling(g, lab)
    if problems:
        out.disagreements.append(_record(g, [], problems, None, "labeling invariants"))
    closure = forcing_closure(ColoringState(g, frozenset(lab.order[:k])))
    if len(closure) != n:
        out.disagreements.append(_record(g, n, len(closure), None,
                                         "first k labels are not a zero forcing set"))
    expected = kpath_mr(n, k)
    got = {p: _try_min(g, p, params.get("budget"), out) for p in params["primes"]}
    _stabilized(g, params["primes"], expected, got, out, f"P_{n}^{k}")
    out.checked = True
    return out


def _mr4_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    verdict = classify_mr4_cut_vertex(g).verdict
    budget = params.get("budget")
    got = {}
    for p in params["primes"]:
        r = _try_min(g, p, budget, out)
        got[p] = None if r is None else (r == 4)
    _stabilized(g, params["primes"], verdict != "No", got, out, f"classifier says {verdict}")
    return out


def _odd_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    expected = 2 * matching_number(g)[0]
    for p in params["primes"]:
        r = _try_min(g, p, params.get("budget"), out)
        if r is None:
            out.checked = False
        elif r != expected:
            out.disagreements.append(_record(g, expected, r, p))
    return out


def _cut_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    budget = params.get("budget")
    for p in params["primes"]:
        whole = _try_min(g, p, budget, out)
        if whole is None:
            out.checked = False
            continue
        for v in sorted(cut_vertices(g)):
            dec = branches_at(g, v)
            base, gain = 0, 0
            for branch, c in zip(dec.branches, dec.local_cut):
                rest, _ = delete_vertex(branch, c)
                r_rest = _try_min(rest, p, budget, out)
                r_full = _try_min(branch, p, budget, out)
                if r_rest is None or r_full is None:
                    out.checked = False
                    return out
                rv = r_full - r_rest
                if rv not in (0, 2):
                    out.disagreements.append(_record(g, [0, 2], rv, p, f"r_v range at {v}"))
                base += r_rest
                gain += rv
            formula = base + min(gain, 2)
            if formula != whole:
                out.disagreements.append(_record(g, whole, formula, p, f"cut vertex {v}"))
    return out


def _zf_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    z = zero_forcing_number(g)[0]
    for p in params["primes"]:
        # no lower bound here: the bound under test must not steer the search
        r = _try_min(g, p, params.get("budget"), out)
        if r is None:
            out.checked = False
        elif g.n - r > z:
            out.disagreements.append(_record(g, f"nullity <= {z}", g.n - r, p))
    return out


def _upm_family(params):
    return [g for g in _connected(params.get("nmax", 8), 2)
            if count_perfect_matchings(g, cap=2) == 1]


def _upm_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    for p in params["primes"]:
        r = _try_min(g, p, params.get("budget"), out)
        if r is None:
            out.checked = False
        elif r != g.n:
            out.disagreements.append(_record(g, g.n, r, p))
    return out


def _maxrank_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    expected = 2 * matching_number(g)[0]
    for p in params["primes"]:
        try:
            r = oracle_max(g, p, params.get("budget"))
        except BudgetExceeded as exc:
            out.skipped.append({"graph": graph_json(g), "prime": p, "reason": str(exc)})
            out.checked = False
            continue
        if r != expected:
            out.disagreements.append(_record(g, expected, r, p))
    return out


def _induced_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    budget = params.get("budget")
    for p in params["primes"]:
        top = _try_min(g, p, budget, out)
        if top is None:
            out.checked = False
            continue
        for size in range(1, g.n):
            for subset in combinations(range(g.n), size):
                h, _ = induced_subgraph(g, subset)
                r = _try_min(h, p, budget, out)
                if r is not None and r > top:
                    out.disagreements.append(_record(g, f"<= {top}", r, p,
                                                     f"induced on {list(subset)}"))
    return out


def _union_family(params):
    rng = random.Random(params.get("seed", 0))
    items = []
    for i in range(params.get("trials", 200)):
        n = rng.randint(2, params.get("nmax", 6))
        pairs = list(combinations(range(n), 2))
        edges = [e for e in pairs if rng.random() < 0.5] or [rng.choice(pairs)]
        e1, e2 = set(), set()
        for e in edges:
            side = rng.randrange(3)
            if side != 1:
                e1.add(e)
            if side != 0:
                e2.add(e)
        items.append((i, n, tuple(sorted(edges)), tuple(sorted(e1)), tuple(sorted(e2))))
    return items


def _union_check(item, params) -> Outcome:
    i, n, edges, e1, e2 = item
    g = Graph.from_edges(n, edges)
    g1, g2 = Graph.from_edges(n, e1), Graph.from_edges(n, e2)
    out = Outcome((i,))
    top = max(params["primes"])
    budget = params.get("budget")
    for p in params["primes"]:
        r, r1, r2 = (_try_min(h, p, budget, out) for h in (g, g1, g2))
        if None in (r, r1, r2):
            out.checked = False
            continue
        if r > r1 + r2:
            rec = _record(g, f"<= {r1} + {r2}", r, p,
                          f"pieces {[list(e) for e in e1]} and {[list(e) for e in e2]}")
            (out.disagreements if p == top else out.informational).append(rec)
    return out


def _multipartite_family(params):
    def partitions(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in partitions(n - first, first):
                yield (first,) + rest

    return [sizes for n in range(2, params.get("nmax", 7) + 1)
            for sizes in partitions(n, n) if len(sizes) >= 2]


def _multipartite_check(sizes, params) -> Outcome:
    g = complete_multipartite(*sizes)
    out = Outcome((sum(sizes),) + tuple(sizes))
    t = len(sizes)
    # a rank-two matrix needs t distinct points on the projective line over GF(p)
    primes = [p for p in params["primes"] if p + 1 >= t]
    for p in params["primes"]:
        if p + 1 < t:
            out.skipped.append({"graph": graph_json(g), "prime": p,
                                "reason": f"{t} parts need p + 1 >= {t}"})
    got = {p: _try_min(g, p, params.get("budget"), out) for p in primes}
    if not primes:
        out.checked = False
        return out
    _stabilized(g, primes, 2, got, out, f"K_{sizes}")
    generic = mr_exact_structural(g, FieldSpec.generic()).exact
    if generic != 2:
        out.disagreements.append(_record(g, 2, generic, None, "generic engine"))
    return out


def _engine_finite_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    budget = params.get("budget")
    for p in params["primes"]:
        res = mr_exact_structural(g, FieldSpec.finite(p))
        if res.exact is None:
            out.informational.append(_record(g, [res.lower, res.upper], None, p, "bounds only"))
            r = _try_min(g, p, budget, out)
            if r is not None and not res.lower <= r <= res.upper:
                out.disagreements.append(_record(g, [res.lower, res.upper], r, p, "outside bounds"))
            continue
        r = _try_min(g, p, budget, out)
        if r is None:
            out.checked = False
        elif r != res.exact:
            out.disagreements.append(_record(g, res.exact, r, p, res.trace[0].rule))
    return out


def _engine_generic_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    res = mr_exact_structural(g, FieldSpec.generic())
    if res.exact is None:
        out.checked = False
        return out
    got = {p: _try_min(g, p, params.get("budget"), out) for p in params["primes"]}
    _stabilized(g, params["primes"], res.exact, got, out, res.trace[0].rule)
    return out


def _bounds_family(params):
    return [g for n in range(1, params.get("nmax", 6) + 1) for g in enumerate_graphs(n)]


def _bounds_check(g, params) -> Outcome:
    out = Outcome(canonical_form(g))
    b = mr_bounds(g)
    for p in params["primes"]:
        r = _try_min(g, p, params.get("budget"), out)
        if r is None:
            out.checked = False
        elif not b.lower <= r <= b.upper:
            out.disagreements.append(_record(g, [b.lower, b.upper], r, p))
    return out


def _oracle_self_family(params):
    rng = random.Random(params.get("seed", 0))
    items = [("norm", g) for g in _connected(params.get("nmax", 5), 2)]
    for i in range(params.get("trials", 50)):
        n = rng.randint(4, 7)
        pairs = list(combinations(range(n), 2))
        while True:
            edges = [e for e in pairs if rng.random() < 0.45]
            g = Graph.from_edges(n, edges)
            if edges and search_space_size(g, 11) <= 10 ** 6:
                break
        items.append(("split", (i, g, rng.choice([5, 7, 11]), rng.choice([2, 3, 4]))))
    return items


def _oracle_self_check(item, params) -> Outcome:
    kind, payload = item
    if kind == "norm":
        g = payload
        out = Outcome((0,) + canonical_form(g))
        for p in params["primes"]:
            fast = min_rank_exhaustive(g, p, budget=None).rank
            full = min_rank_exhaustive(g, p, normalize=False, budget=None).rank
            if fast != full:
                out.disagreements.append(_record(g, full, fast, p, "normalized min"))
            fast = max_rank_exhaustive(g, p, budget=None).rank
            full = max_rank_exhaustive(g, p, normalize=False, budget=None).rank
            if fast != full:
                out.disagreements.append(_record(g, full, fast, p, "normalized max"))
        return out
    i, g, p, parts = payload
    out = Outcome((1, i))
    for name, fn in (("min", min_rank_exhaustive), ("max", max_rank_exhaustive)):
        serial = fn(g, p, budget=None)
        split = fn(g, p, budget=None, workers=parts)
        if serial.rank != split.rank or serial.matrix != split.matrix:
            out.disagreements.append(_record(g, serial.rank, split.rank, p,
                                             f"{name} over {parts} workers"))
    return out


def _parity_family(params):
    rng = np.random.default_rng(params.get("seed", 0))
    trials = params.get("trials", 1000)
    items = []
    for i in range(trials):
        n = int(rng.integers(1, 9))
        p = params["primes"][i % len(params["primes"])]
        density = float(rng.random())
        pairs = list(combinations(range(n), 2))
        edges = [e for e in pairs if rng.random() < density]
        items.append((i, Graph.from_edges(n, edges), p, int(rng.integers(2 ** 31))))
    return items


def _parity_check(item, params) -> Outcome:
    i, g, p, seed = item
    out = Outcome((i,))
    a = random_skew_matrix(g, p, np.random.default_rng(seed))
    r = rank_skew(a)
    if r % 2:
        out.disagreements.append(_record(g, "even", r, p))
    return out


@dataclass(frozen=True)
class Campaign:
    name: str
    family: Callable
    check: Callable
    primes: tuple
    defaults: dict
    parallel: bool = True
    about: str = ""


CAMPAIGNS = {c.name: c for c in [
    Campaign("thm-kpath", _kpath_family, _kpath_check, (5, 11, 13),
             {"nmax": 9, "kmax": 3, "budget": None},
             about="path powers are k-paths with minimum rank n-k rounded up to even"),
    Campaign("thm-mr4", lambda pr: _with_cut_vertex(pr.get("nmax", 7)), _mr4_check, (5, 11, 13),
             {"nmax": 7, "budget": None},
             about="rank-four classification at cut vertices"),
    Campaign("thm-odd",
             lambda pr: [g for g in _connected(pr.get("nmax", 7)) if not has_even_cycle(g)],
             _odd_check, (5,), {"nmax": 7, "budget": None},
             about="no even cycle: minimum rank is twice the matching number"),
    Campaign("lem-cut", lambda pr: _with_cut_vertex(pr.get("nmax", 7)), _cut_check, (11,),
             {"nmax": 7, "budget": None},
             about="branch formula at every cut vertex"),
    Campaign("lem-zf", lambda pr: list(_connected(pr.get("nmax", 6))), _zf_check, (5, 11),
             {"nmax": 6, "budget": None},
             about="maximum nullity is at most the zero forcing number"),
    Campaign("lem-upm", _upm_family, _upm_check, (5,), {"nmax": 8, "budget": None},
             about="a unique perfect matching forces full rank"),
    Campaign("lem-maxrank", lambda pr: list(_connected(pr.get("nmax", 6))), _maxrank_check,
             (11,), {"nmax": 6, "budget": None},
             about="maximum rank is twice the matching number"),
    Campaign("lem-induced", lambda pr: list(_connected(pr.get("nmax", 6))), _induced_check,
             (5, 11), {"nmax": 6, "budget": None},
             about="minimum rank never grows when passing to an induced subgraph"),
    Campaign("lem-union", _union_family, _union_check, (5, 13),
             {"nmax": 6, "trials": 200, "seed": 0, "budget": None},
             about="minimum rank of an edge union is at most the sum"),
    Campaign("lem-multipartite", _multipartite_family, _multipartite_check, (5, 11, 13),
             {"nmax": 7, "budget": None},
             about="complete multipartite graphs have minimum rank two"),
    Campaign("engine-finite", lambda pr: list(_connected(pr.get("nmax", 7))),
             _engine_finite_check, (5, 11), {"nmax": 7, "budget": None},
             about="finite-field engine values against the oracle"),
    Campaign("engine-generic", lambda pr: list(_connected(pr.get("nmax", 6))),
             _engine_generic_check, (5, 11, 13), {"nmax": 6, "budget": None},
             about="generic engine values against the oracle at the largest prime"),
    Campaign("bounds", _bounds_family, _bounds_check, (11,), {"nmax": 6, "budget": None},
             about="zero forcing and matching bounds sandwich the oracle"),
    Campaign("oracle-self", _oracle_self_family, _oracle_self_check, (5,),
             {"nmax": 5, "trials": 50, "seed": 0}, parallel=False,
             about="normalized against full search, partitioned against serial"),
    Campaign("parity", _parity_family, _parity_check, (3, 5, 11),
             {"trials": 1000, "seed": 0}, parallel=False,
             about="every skew matrix has even rank"),
]}


def _run_one(args):
    check, item, params = args
    return check(item, params)


def run_verification(campaign: str, params: Optional[dict] = None, *,
                     workers: int = 1) -> VerificationReport:
    """Run a named campaign and return its report.

    ``params`` may override ``nmax``, ``primes``, ``seed``, ``budget`` and the
    campaign-specific knobs; the defaults reproduce the documented runs.
    """
    if campaign not in CAMPAIGNS:
        raise UnknownCampaign(f"unknown campaign {campaign!r}; choose from {', '.join(CAMPAIGNS)}")
    entry = CAMPAIGNS[campaign]
    merged = dict(entry.defaults)
    merged.update(params or {})
    merged["primes"] = sorted(merged.get("primes") or entry.primes)
    start = time.perf_counter()
    items = entry.family(merged)
    jobs = [(entry.check, item, merged) for item in items]
    if workers > 1 and entry.parallel and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        outcomes = [_run_one(j) for j in jobs]
    outcomes.sort(key=lambda o: o.key)
    report = VerificationReport(campaign, merged["primes"],
                                params={k: v for k, v in merged.items() if k != "primes"})
    for o in outcomes:
        report.informational.extend(o.informational)
        report.skipped.extend(o.skipped)
        if o.disagreements:
            # one entry per graph; further failures on the same graph ride along
            first = dict(o.disagreements[0])
            if len(o.disagreements) > 1:
                first["more"] = o.disagreements[1:]
            report.disagreements.append(first)
            report.graphs_checked += 1
        elif o.checked:
            report.graphs_checked += 1
            report.agreements += 1
    report.runtime = round(time.perf_counter() - start, 3)
    return report
