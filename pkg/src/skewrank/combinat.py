"""Matchings and zero forcing on small graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .graph import Graph, TooLarge

MATCHING_MAX_N = 20
ZF_MAX_N = 12


@dataclass(frozen=True)
class Matching:
    edges: frozenset

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                raise ValueError("matching edges must be vertex-disjoint")
            seen.update((u, v))

    @property
    def size(self) -> int:
        return len(self.edges)

    def covers(self) -> frozenset:
        return frozenset(x for e in self.edges for x in e)

    def is_perfect(self, g: Graph) -> bool:
        return len(self.covers()) == g.n


def matching_number(g: Graph) -> tuple[int, Matching]:
    """Maximum matching by branch and bound over the lowest unresolved vertex.

    The lowest uncovered vertex is either left unmatched or matched to one of
    its uncovered neighbours; a branch is cut once ``|M| + floor(free/2)``
    cannot beat the incumbent.
    """
    if g.n > MATCHING_MAX_N:
        raise TooLarge(f"matching search supports n <= {MATCHING_MAX_N}")
    bits = g.adjacency_bits()
    best = [0, ()]
    ceiling = g.n // 2

    def rec(free: int, chosen: tuple):
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), chosen
        if best[0] == ceiling:
            return
        # vertices with no free neighbour can never be matched
        live = 0
        rest = free
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if bits[v] & free:
                live |= 1 << v
        if not live or len(chosen) + bin(live).count("1") // 2 <= best[0]:
            return
        v = (live & -live).bit_length() - 1
        nbrs = bits[v] & live
        while nbrs:
            w = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            rec(live & ~(1 << v) & ~(1 << w), chosen + ((v, w),))
        rec(live & ~(1 << v), chosen)

    rec((1 << g.n) - 1, ())
    return best[0], Matching(frozenset(best[1]))


def count_perfect_matchings(g: Graph, cap: Optional[int] = 2) -> int:
    """Number of perfect matchings, saturating at ``cap`` (``None`` for the full count)."""
    if cap is not None and cap < 2:
        raise ValueError("cap must be at least 2")
    if g.n % 2:
        return 0
    bits = g.adjacency_bits()
    count = [0]

    def rec(free: int):
        if cap is not None and count[0] >= cap:
            return
        if not free:
            count[0] += 1
            return
        v = (free & -free).bit_length() - 1
        nbrs = bits[v] & free
        while nbrs:
            w = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            rec(free & ~(1 << v) & ~(1 << w))

    rec((1 << g.n) - 1)
    return count[0] if cap is None else min(count[0], cap)


@dataclass(frozen=True)
class ColoringState:
    host: Graph
    black: frozenset

    def __post_init__(self):
        object.__setattr__(self, "black", frozenset(self.black))
        if any(not 0 <= v < self.host.n for v in self.black):
            raise ValueError("black vertices must belong to the host graph")


def _closure_bits(bits: list[int], full: int, black: int) -> int:
    changed = True
    while changed:
        changed = False
        rest = black
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            white = bits[u] & ~black & full
            if white and white & (white - 1) == 0:
                black |= white
                changed = True
    return black


def forcing_closure(state: ColoringState, rng: Optional[random.Random] = None) -> frozenset:
    """Derived set of the initial colouring under the colour change rule.

    With ``rng`` the forces are applied in a random order, one at a time,
    which is only useful for checking that the fixpoint does not depend on it.
    """
    g = state.host
    bits = g.adjacency_bits()
    full = (1 << g.n) - 1
    black = 0
    for v in state.black:
        black |= 1 << v
    if rng is None:
        black = _closure_bits(bits, full, black)
    else:
        while True:
            forces = []
            for u in range(g.n):
                if black >> u & 1:
                    white = bits[u] & ~black
                    if white and white & (white - 1) == 0:
                        forces.append(white)
            if not forces:
                break
            black |= rng.choice(forces)
    return frozenset(v for v in range(g.n) if black >> v & 1)


def is_zero_forcing_set(g: Graph, vertices) -> bool:
    return len(forcing_closure(ColoringState(g, frozenset(vertices)))) == g.n


def zero_forcing_number(g: Graph) -> tuple[int, frozenset]:
    """``Z(g)`` and the first minimum zero forcing set in (size, lexicographic) order."""
    if g.n > ZF_MAX_N:
        raise TooLarge(f"zero forcing search supports n <= {ZF_MAX_N}")
    bits = g.adjacency_bits()
    full = (1 << g.n) - 1
    for size in range(g.n + 1):
        for subset in combinations(range(g.n), size):
            black = 0
            for v in subset:
                black |= 1 << v
            if _closure_bits(bits, full, black) == full:
                return size, frozenset(subset)
    raise AssertionError("the full vertex set always forces")
