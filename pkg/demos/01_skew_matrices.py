"""
Skew-symmetric matrices over a prime field
==========================================

A graph describes a family of skew-symmetric matrices: the nonzero
off-diagonal entries sit exactly on its edges.  Over any field of odd
characteristic the rank of such a matrix is even.
"""

import numpy as np

from skewrank import matrix_from_assignment, path_graph, rank_skew
from skewrank.linalg import random_skew_matrix

# a path on three vertices, with the two edge values chosen by hand
g = path_graph(3)
a = matrix_from_assignment(g, 5, {(0, 1): 1, (1, 2): 2})
print(a.entries)
print("rank over GF(5):", rank_skew(a))

# random matrices: the rank is always even, whatever the graph
rng = np.random.default_rng(0)
ranks = [rank_skew(random_skew_matrix(path_graph(n), 11, rng)) for n in range(1, 9)]
print("ranks of random path matrices, n = 1..8:", ranks)

# matrices serialize to plain JSON with entries in [0, p)
print(a.to_json())
