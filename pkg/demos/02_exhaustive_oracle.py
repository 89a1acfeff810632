"""
The exhaustive oracle
=====================

Minimum and maximum rank are found by walking every assignment of nonzero
values to the edges.  Scaling rows and columns by the same diagonal matrix
keeps rank and support, so the edges of a spanning tree can be fixed to 1
first; the remaining edges run through an odometer that prunes by rank.
"""

from skewrank import complete_multipartite, cycle_graph, max_rank_exhaustive, min_rank_exhaustive
from skewrank.linalg import SearchStats, search_space_size

g = cycle_graph(6)
for p in (5, 11):
    stats = SearchStats()
    lo = min_rank_exhaustive(g, p, stats=stats)
    hi = max_rank_exhaustive(g, p)
    print(f"C_6 over GF({p}): ranks from {lo.rank} to {hi.rank}, "
          f"{search_space_size(g, p)} assignments, {stats.nodes} nodes visited")

# every answer carries a witness that can be checked on its own
print(lo.matrix.entries)
print("witness verifies:", lo.verify())

# a complete multipartite graph with t parts needs t distinct ratios, i.e. p + 1 >= t
k5 = complete_multipartite(1, 1, 1, 1, 1)
for p in (3, 5):
    print(f"K_5 over GF({p}): minimum rank {min_rank_exhaustive(k5, p).rank}")

# without normalization the search is much larger but must agree
print("unnormalized C_6 over GF(5):", min_rank_exhaustive(g, 5, normalize=False).rank)
