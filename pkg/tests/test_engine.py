import json

import pytest
from hypothesis import given

from conftest import graphs
from skewrank.engine import (
    BadParameters,
    EngineError,
    FieldSpec,
    Inexact,
    NoCutVertex,
    NotAchievable,
    RankResult,
    certify,
    classify_mr4_cut_vertex,
    cut_vertex_mr,
    kpath_mr,
    mr_bounds,
    mr_exact_structural,
    path_power_mr,
    r_v,
    replay,
)
from skewrank.graph import (
    Graph,
    NotACutVertex,
    complete_graph,
    complete_multipartite,
    cut_vertices,
    cycle_graph,
    disjoint_union,
    enumerate_graphs,
    path_graph,
    star_graph,
)
from skewrank.linalg import min_rank_exhaustive

GENERIC = FieldSpec.generic()
BOWTIE = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
PAW = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
TWO_SQUARES = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (4, 5), (5, 6), (0, 6)])
SPIDER = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


def _rules(step):
    yield step.rule
    for c in step.children:
        yield from _rules(c)


def test_field_spec():
    assert FieldSpec.parse("generic").is_generic
    assert FieldSpec.parse("13") == FieldSpec.finite(13)
    for bad in ("2", "9", "x"):
        with pytest.raises(Exception):
            FieldSpec.parse(bad)
    with pytest.raises(EngineError):
        FieldSpec("generic", 5)


def test_rank_result_invariants():
    with pytest.raises(EngineError):
        RankResult(4, 2)
    with pytest.raises(EngineError):
        RankResult(1, 3)
    with pytest.raises(EngineError):
        RankResult(2, 4, 2)
    r = RankResult(2, 2, 2)
    assert r.to_json()["exact"] == 2


def test_bounds_examples():
    r = mr_bounds(path_graph(5))
    assert (r.lower, r.upper, r.exact) == (4, 4, 4)
    r = mr_bounds(cycle_graph(6))
    assert (r.lower, r.upper, r.exact) == (4, 6, None)
    r = mr_bounds(complete_graph(2))
    assert (r.lower, r.upper, r.exact) == (2, 2, 2)


def test_bounds_round_up_per_component():
    # two triangles: each has n - Z = 1, rounded to 2
    g = disjoint_union(complete_graph(3), complete_graph(3))
    assert mr_bounds(g).lower == 4


def test_r_v_examples():
    assert r_v(complete_graph(2), 0, GENERIC) == 2
    assert r_v(complete_graph(3), 1, GENERIC) == 0
    assert r_v(path_graph(3), 1, GENERIC) == 2


def test_r_v_inexact():
    with pytest.raises(Inexact):
        r_v(cycle_graph(6), 0, FieldSpec.finite(5))
    assert r_v(cycle_graph(6), 0, FieldSpec.finite(5), oracle=True) == 0


def test_cut_vertex_examples():
    assert cut_vertex_mr(BOWTIE, 0, GENERIC) == 4
    assert cut_vertex_mr(star_graph(3), 0, GENERIC) == 2
    assert cut_vertex_mr(path_graph(5), 1, GENERIC) == 4
    with pytest.raises(NotACutVertex):
        cut_vertex_mr(complete_graph(4), 0, GENERIC)


def test_classifier_examples():
    c = classify_mr4_cut_vertex(BOWTIE)
    assert c.verdict == "CaseI" and c.cut_vertex == 0
    assert all(b == complete_graph(3) for b in c.branches)
    c = classify_mr4_cut_vertex(PAW)
    assert c.verdict == "CaseII" and c.component == complete_graph(2) and c.isolated == 1
    assert classify_mr4_cut_vertex(SPIDER).verdict == "No"
    assert min_rank_exhaustive(SPIDER, 11).rank == 6
    assert "edge" in c.to_json()["nonempty_means"]
    with pytest.raises(NoCutVertex):
        classify_mr4_cut_vertex(complete_graph(4))


def test_classifier_needs_edges_on_both_sides():
    # both sides of P_3's centre are single vertices: rank 2, not 4
    assert classify_mr4_cut_vertex(path_graph(3)).verdict == "No"
    assert min_rank_exhaustive(path_graph(3), 13).rank == 2


def test_closed_forms():
    assert kpath_mr(5, 2) == 4
    assert kpath_mr(6, 2) == 4
    for k in range(1, 6):
        assert kpath_mr(k + 1, k) == 2
    assert path_power_mr(7, 2) == 6
    assert path_power_mr(6, 1) == 6
    assert path_power_mr(4, 5) == 2
    for bad in [(1, 1), (3, 0)]:
        with pytest.raises(BadParameters):
            path_power_mr(*bad)
    with pytest.raises(BadParameters):
        kpath_mr(3, 3)


def test_structural_examples():
    r = mr_exact_structural(SPIDER, FieldSpec.finite(5))
    assert r.exact == 6 and r.trace[0].rule == "R3-no-even-cycle"
    assert r.trace[0].detail["match"] == 3
    r = mr_exact_structural(cycle_graph(4), GENERIC)
    assert r.exact == 2 and r.trace[0].rule == "R2-complete-multipartite"
    r = mr_exact_structural(cycle_graph(6), GENERIC)
    assert (r.lower, r.upper, r.exact) == (4, 6, None)


def test_finite_mode_skips_generic_rules():
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            r = mr_exact_structural(g, FieldSpec.finite(5))
            rules = set(_rules(r.trace[0]))
            assert not rules & {"R2-complete-multipartite", "R5-k-path"}


def test_union_adds_components():
    g = disjoint_union(complete_graph(3), path_graph(4), Graph(1, frozenset()))
    r = mr_exact_structural(g, GENERIC)
    assert r.exact == 6 and r.trace[0].rule == "R0-components"


def test_oracle_flag():
    with pytest.raises(EngineError):
        mr_exact_structural(cycle_graph(6), GENERIC, oracle=True)
    r = mr_exact_structural(cycle_graph(6), FieldSpec.finite(5), oracle=True)
    assert r.exact == 4 and r.certificate.verify()
    assert r.certificate.matrix.support == cycle_graph(6)
    r = mr_exact_structural(disjoint_union(cycle_graph(4), complete_graph(2)),
                            FieldSpec.finite(7), oracle=True)
    assert r.exact == 4 and r.certificate.verify()


def test_result_json():
    r = mr_exact_structural(TWO_SQUARES, GENERIC)
    obj = json.loads(json.dumps(r.to_json()))
    assert obj["exact"] == 4
    assert obj["trace"][0]["rule"] == "R6-cut-vertex"
    assert obj["trace"][0]["subgraph"]["n"] == 7
    assert len(obj["trace"][0]["children"]) == 4


def test_replay_every_exact_result():
    for spec in (GENERIC, FieldSpec.finite(5)):
        for n in range(1, 7):
            for g in enumerate_graphs(n):
                r = mr_exact_structural(g, spec)
                if r.exact is not None:
                    assert replay(r, spec) == r.exact


def test_replay_catches_tampering():
    r = mr_exact_structural(TWO_SQUARES, GENERIC)
    r.trace[0].children[1].value = 0
    with pytest.raises(EngineError):
        replay(r, GENERIC)


@given(graphs(max_n=6, connected=True))
def test_r_v_is_zero_or_two(g):
    spec = FieldSpec.finite(11)
    for v in range(g.n):
        assert r_v(g, v, spec, oracle=True) in (0, 2)


@given(graphs(max_n=6))
def test_finite_exact_matches_oracle(g):
    for p in (5, 11):
        r = mr_exact_structural(g, FieldSpec.finite(p))
        truth = min_rank_exhaustive(g, p, budget=None).rank
        assert r.lower <= truth <= r.upper
        if r.exact is not None:
            assert r.exact == truth


def test_certify_examples():
    w = certify(complete_multipartite(2, 3), 2, 11)
    assert w.rank == 2 and w.verify() and w.matrix.support == complete_multipartite(2, 3)
    w = certify(path_graph(4), 4, 5)
    assert w.rank == 4 and w.verify()
    with pytest.raises(NotAchievable) as exc:
        certify(complete_graph(2), 0, 5)
    assert exc.value.reason == "below-minimum"


def test_certify_reasons():
    with pytest.raises(NotAchievable) as exc:
        certify(star_graph(3), 4, 5)
    assert exc.value.reason == "above-maximum"
    with pytest.raises(NotAchievable) as exc:
        certify(path_graph(3), 3, 5)
    assert exc.value.reason == "impossible"
    with pytest.raises(NotAchievable) as exc:
        certify(cycle_graph(6), 2, 5)
    assert exc.value.reason == "below-minimum"


def test_certify_reaches_every_rank_in_range():
    for g in enumerate_graphs(5, connected_only=True):
        lo = min_rank_exhaustive(g, 7).rank
        for target in range(lo, 2 * (g.n // 2) + 1, 2):
            try:
                w = certify(g, target, 7, trials=5)
            except NotAchievable as exc:
                assert exc.reason in ("gap", "above-maximum")
                continue
            assert w.rank == target and w.verify()


def test_mr4_has_cut_vertices():
    for n in range(3, 7):
        for g in enumerate_graphs(n, connected_only=True):
            if cut_vertices(g):
                c = classify_mr4_cut_vertex(g)
                if c.verdict != "No":
                    assert c.cut_vertex in cut_vertices(g)
