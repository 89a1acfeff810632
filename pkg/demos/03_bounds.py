"""
Zero forcing and matchings
==========================

Two cheap combinatorial numbers bracket the minimum rank: the nullity is at
most the zero forcing number Z(G), and no matrix has rank above twice the
matching number.
"""

from skewrank import (
    ColoringState,
    cycle_graph,
    forcing_closure,
    matching_number,
    mr_bounds,
    path_power,
    zero_forcing_number,
)

# the colour change rule: a black vertex with one white neighbour turns it black
g = path_power(7, 2)
print("closure of {0}:", sorted(forcing_closure(ColoringState(g, {0}))))
print("closure of {0, 1}:", sorted(forcing_closure(ColoringState(g, {0, 1}))))
print("Z(P_7^2) =", zero_forcing_number(g))

size, m = matching_number(cycle_graph(6))
print("match(C_6) =", size, sorted(m.edges))

for h, name in [(g, "P_7^2"), (cycle_graph(6), "C_6")]:
    b = mr_bounds(h)
    print(f"{name}: {b.lower} <= mr <= {b.upper}", "(exact)" if b.exact is not None else "")
