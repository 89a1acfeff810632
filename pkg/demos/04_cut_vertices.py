"""
Cut vertices
============

At a cut vertex v the graph splits into branches G_1, ..., G_h.  The minimum
rank is the sum of mr(G_i - v) plus min(sum of r_v(G_i), 2), where r_v is the
drop in minimum rank caused by deleting v.  Among graphs with a cut vertex,
those of minimum rank four have a short description, which the classifier
tests directly.
"""

from skewrank import (
    FieldSpec,
    Graph,
    branches_at,
    classify_mr4_cut_vertex,
    cut_vertex_mr,
    min_rank_exhaustive,
    r_v,
)

generic = FieldSpec.generic()
bowtie = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
paw = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
spider = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])

dec = branches_at(bowtie, 0)
print("bowtie branches:", [b.sorted_edges() for b in dec.branches])
print("r_v of a triangle:", r_v(dec.branches[0], dec.local_cut[0], generic))
print("formula at the centre:", cut_vertex_mr(bowtie, 0, generic))
print("oracle over GF(13):", min_rank_exhaustive(bowtie, 13).rank)

for g, name in [(bowtie, "bowtie"), (paw, "paw"), (spider, "spider")]:
    c = classify_mr4_cut_vertex(g)
    print(f"{name}: {c.verdict} at {c.cut_vertex}; oracle rank {min_rank_exhaustive(g, 13).rank}")
