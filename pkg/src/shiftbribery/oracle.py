"""Exhaustive reference solvers.

These are deliberately naive; every specialised algorithm is checked against
them on small instances.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .election import Instance, SolveOutcome, shift_cost, verify


@dataclass(frozen=True)
class EnumerationBounds:
    max_total_cost: int | None = None
    max_shift: int | None = None

    def __post_init__(self):
        for v in (self.max_total_cost, self.max_shift):
            if v is not None and v < 0:
                raise ValueError("enumeration caps must be non-negative")


def brute_force_min_cost(instance: Instance, bounds: EnumerationBounds | None = None) -> SolveOutcome:
    """Cheapest winning shift vector by depth-first enumeration.

    Vectors are visited in lexicographic order and a branch is cut as soon as
    its running cost exceeds the budget or reaches the best cost found, so
    the first minimum-cost winner found is also the lexicographically smallest.
    """
    bounds = bounds or EnumerationBounds()
    cap = instance.budget if bounds.max_total_cost is None else min(instance.budget, bounds.max_total_cost)
    top = instance.m - 1 if bounds.max_shift is None else min(instance.m - 1, bounds.max_shift)
    n = instance.n
    costs = instance.costs
    s = [0] * n
    best: list = [None, None]  # cost, vector
    visited = 0
    start = time.perf_counter()

    def dfs(i: int, spent: int) -> None:
        nonlocal visited
        if i == n:
            visited += 1
            if verify(instance, s):
                best[0], best[1] = spent, tuple(s)
            return
        for x in range(top + 1):
            c = spent + costs[i](x)
            if c > cap or (best[0] is not None and c >= best[0]):
                continue
            s[i] = x
            dfs(i + 1, c)
        s[i] = 0

    dfs(0, 0)
    stats = {"visited": visited, "seconds": time.perf_counter() - start}
    if best[1] is None:
        return SolveOutcome.infeasible("oracle", **stats)
    assert shift_cost(instance, best[1]) == best[0]
    return SolveOutcome(True, best[0], best[1], "oracle", stats)


def closed_neighborhood(graph: nx.Graph, vertices) -> set:
    covered = set(vertices)
    for v in vertices:
        covered.update(graph[v])
    return covered


def brute_force_partial_dominating(graph: nx.Graph, k: int, t: int, among=None) -> frozenset | None:
    """Some D with |D| <= k whose closed neighbourhood covers >= t vertices.

    With ``among`` given, only covered vertices inside that set are counted.
    Smaller sets are tried first.
    """
    nodes = sorted(graph.nodes)
    among = set(nodes) if among is None else set(among)
    for size in range(min(k, len(nodes)) + 1):
        for d in combinations(nodes, size):
            if len(closed_neighborhood(graph, d) & among) >= t:
                return frozenset(d)
    return None


def brute_force_dominating(graph: nx.Graph, k: int) -> frozenset | None:
    return brute_force_partial_dominating(graph, k, graph.number_of_nodes())
