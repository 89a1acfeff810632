"""
The rule engine
===============

mr_exact_structural tries each rule in turn and records what fired.  In
generic mode rules that need a large field are allowed; in finite mode they
are not, and the exhaustive oracle can be asked to close any gap, in which
case a certificate matrix comes back with the answer.
"""

import json

from skewrank import FieldSpec, Graph, certify, cycle_graph, mr_exact_structural, replay
from skewrank.engine import NotAchievable

two_squares = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (4, 5), (5, 6), (0, 6)])

res = mr_exact_structural(two_squares, FieldSpec.generic())
print("generic:", res.exact)
top = res.to_json()["trace"][0]
print(top["rule"], top["detail"])
for child in top["children"]:
    print("   ", child["rule"], child["subgraph"]["edges"], "->", child["value"])
print("replayed:", replay(res, FieldSpec.generic()))

res = mr_exact_structural(two_squares, FieldSpec.finite(5))
print("GF(5) without oracle:", res.lower, res.upper, res.exact)

res = mr_exact_structural(cycle_graph(6), FieldSpec.finite(5), oracle=True)
print("C_6 over GF(5) with oracle:", res.exact, "via", res.trace[0].rule)
print(res.certificate.matrix.entries)

try:
    certify(cycle_graph(6), 2, 5)
except NotAchievable as exc:
    print("rank 2 for C_6:", exc.reason)
