"""Greedy dominating sets."""

from __future__ import annotations

import math

from .graph import Graph, GraphError, is_connected


def domination_bound(n: int, min_degree: int) -> int:
    """Ceiling of ``n (1 + ln(d + 1)) / (d + 1)`` for minimum degree ``d``."""
    d1 = min_degree + 1
    return math.ceil(n * (1 + math.log(d1)) / d1 - 1e-12)


def greedy_dominating_set(g: Graph) -> list[int]:
    """Repeatedly take the vertex whose closed neighborhood covers the most
    undominated vertices (lowest id on ties). Returns the set sorted."""
    if g.n == 0:
        raise GraphError("empty graph has no dominating set")
    if not is_connected(g):
        raise GraphError("greedy dominating set requires a connected graph")
    closed = [m | (1 << v) for v, m in enumerate(g.masks)]
    undominated = (1 << g.n) - 1
    chosen = []
    while undominated:
        best, best_gain = -1, -1
        for v in range(g.n):
            gain = bin(closed[v] & undominated).count("1")
            if gain > best_gain:
                best, best_gain = v, gain
        chosen.append(best)
        undominated &= ~closed[best]
    return sorted(chosen)


def is_dominating(g: Graph, s) -> bool:
    covered = 0
    for v in s:
        covered |= g.masks[v] | (1 << v)
    return covered == (1 << g.n) - 1
