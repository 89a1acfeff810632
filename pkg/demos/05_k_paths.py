"""
k-paths and path powers
=======================

A k-path is grown from K_{k+1} by attaching vertices to k-cliques so that only
two vertices of degree k remain.  Labelling the vertices from one end, the
first k labels form a zero forcing set, and the minimum rank is n - k rounded
up to an even number.
"""

from skewrank import (
    ColoringState,
    forcing_closure,
    kpath_mr,
    min_rank_exhaustive,
    path_power,
    path_power_mr,
    recognize_k_path,
)
from skewrank.graph import check_kpath_labeling

g = path_power(8, 3)
k, lab = recognize_k_path(g)
print(f"P_8^3 is a {k}-path, labelled {lab.order}")
print("labelling problems:", check_kpath_labeling(g, lab) or "none")
print("first k labels force:", sorted(forcing_closure(ColoringState(g, lab.order[:k]))))

print(" n  k  formula  GF(13)")
for n, k in [(5, 1), (6, 2), (7, 2), (7, 3), (8, 3)]:
    print(f"{n:2d} {k:2d} {kpath_mr(n, k):8d} {min_rank_exhaustive(path_power(n, k), 13, budget=None).rank:7d}")

print("P_4^5 is complete, so its minimum rank is", path_power_mr(4, 5))
