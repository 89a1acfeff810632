from itertools import combinations

import hypothesis.strategies as st
from hypothesis import settings

from skewrank.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {e for e, keep in zip(pairs, mask) if keep}
    if connected:
        # hang every vertex off an earlier one so the graph is connected
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    return Graph.from_edges(n, edges)


def to_nx(g):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.sorted_edges())
    return h


def pytest_terminal_summary(terminalreporter):
    lines = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in name and rep.when == "call":
                number = int(name.split("test_criterion_")[1][:2])
                lines.append((number, "PASS" if status == "passed" else "FAIL", name))
    if lines:
        terminalreporter.section("acceptance criteria")
        for number, verdict, name in sorted(lines):
            terminalreporter.write_line(f"criterion {number}: {verdict}  ({name.split('::')[1]})")
