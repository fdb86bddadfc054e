"""Parameterized solvers: deletion-set branching and partial domination."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .decomposition import build_tree_decomposition, make_nice
from .dp import (
    _require_two_candidate_majority,
    _require_undirected_unit,
    _require_unit_two_candidate,
    kappa,
    treewidth_core,
)
from .election import Instance, PreconditionError, SolveOutcome, outcome_from_witness, support_target
from .graphs import find_induced_p3, is_cluster_graph, support_graph

FVS = "feedback-vertex-set"
CVD = "cluster-vertex-deletion"


@dataclass(frozen=True)
class DeletionSet:
    kind: str
    vertices: frozenset

    def check(self, graph: nx.Graph) -> None:
        rest = graph.subgraph(set(graph.nodes) - self.vertices)
        if self.kind == FVS and not nx.is_forest(rest):
            raise ValueError("removing the set does not leave a forest")
        if self.kind == CVD and not is_cluster_graph(rest):
            raise ValueError("removing the set does not leave a cluster graph")


def _obstruction(graph: nx.Graph, kind: str):
    if kind == FVS:
        try:
            return [u for u, _ in nx.find_cycle(graph)]
        except nx.NetworkXNoCycle:
            return None
    p3 = find_induced_p3(graph)
    return list(p3) if p3 else None


def find_deletion_set(graph: nx.Graph, kind: str) -> DeletionSet:
    """Minimum deletion set by bounded branching with iterative deepening.

    Every cycle (FVS) or induced P3 (CVD) must lose a vertex, so branch on
    the vertices of one obstruction at a time.
    """
    if kind not in (FVS, CVD):
        raise ValueError(f"unknown deletion-set kind {kind!r}")

    def search(g: nx.Graph, k: int):
        obs = _obstruction(g, kind)
        if obs is None:
            return frozenset()
        if k == 0:
            return None
        for v in obs:
            h = g.copy()
            h.remove_node(v)
            found = search(h, k - 1)
            if found is not None:
                return found | {v}
        return None

    for k in range(graph.number_of_nodes() + 1):
        found = search(graph, k)
        if found is not None:
            result = DeletionSet(kind, frozenset(found))
            result.check(graph)
            return result
    raise AssertionError("deleting every vertex always works")


def _subsets(items):
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def _influenced_by(graph: nx.Graph, bribed) -> set:
    out = set(bribed)
    for v in bribed:
        out.update(graph[v])
    return out


@dataclass(frozen=True)
class Branch:
    """Outcome of one outer branch: ``subset`` of the deletion set is bribed."""

    subset: tuple
    cost: int | None
    bribed: frozenset
    states: int = 0


def _pick(instance: Instance, branches, algorithm: str, deletion: list, start: float, **extra) -> SolveOutcome:
    best = None
    count = states = 0
    for br in branches:
        count += 1
        states += br.states
        if br.cost is not None and (best is None or br.cost < best.cost):
            best = br
    stats = {"deletion_set": deletion, "branches": count, "states": states, **extra}
    stats["seconds"] = time.perf_counter() - start
    if best is None:
        return SolveOutcome.infeasible(algorithm, **stats)
    s = [0] * instance.n
    for v in best.bribed:
        s[v] = 1
    return outcome_from_witness(instance, s, algorithm, **stats)


def fvs_branches(instance: Instance, deletion: DeletionSet):
    """Yield the best completion for every subset Y of the feedback vertex set.

    The direct effect of Y is folded into the supporter set and the remaining
    forest is solved with the treewidth DP. Deletion-set members outside Y
    cannot be bribed in that branch, but forest bribes may still influence
    them; the DP tracks those as a bitmask.
    """
    graph = support_graph(instance.network)
    deletion.check(graph)
    X = sorted(deletion.vertices)
    forest = graph.subgraph(set(graph.nodes) - deletion.vertices)
    nice = make_nice(build_tree_decomposition(forest), forest)
    adj = {v: set(graph[v]) for v in graph.nodes}
    target = support_target(instance)
    base = set(instance.supporters)
    for Y in _subsets(X):
        if len(Y) > instance.budget:
            yield Branch(Y, None, frozenset())
            continue
        supporters = base | _influenced_by(graph, Y)
        need = target - len(supporters)
        if need <= 0:
            yield Branch(Y, len(Y), frozenset(Y))
            continue
        cap = min(instance.budget - len(Y), need)
        counted = set(graph.nodes) - supporters
        rest = [x for x in X if x not in Y]
        res = treewidth_core(nice, adj, counted, need, cap, external=rest)
        if res.cost is None:
            yield Branch(Y, None, frozenset(), res.states)
        else:
            yield Branch(Y, len(Y) + res.cost, frozenset(Y) | res.bribed, res.states)


def solve_via_fvs(instance: Instance, deletion: DeletionSet | None = None) -> SolveOutcome:
    """Two candidates, unit costs: branch over bribed subsets of a feedback vertex set."""
    _require_unit_two_candidate(instance, "FVS solver")
    start = time.perf_counter()
    deletion = deletion or find_deletion_set(support_graph(instance.network), FVS)
    return _pick(
        instance, fvs_branches(instance, deletion), "fvs", sorted(deletion.vertices), start, kappa=kappa(instance)
    )


def _clique_options(members, cost_of, mask_of, cap: int) -> dict[int, tuple[int, tuple]]:
    """Cheapest non-empty bribe set inside a clique for each exact coverage mask."""
    reach: dict[int, tuple[int, tuple]] = {}
    for v in members:
        c = cost_of[v]
        if c > cap:
            continue
        updates = [(mask_of[v], c, (v,))]
        for mask, (cost, chosen) in reach.items():
            if cost + c <= cap:
                updates.append((mask | mask_of[v], cost + c, chosen + (v,)))
        for mask, cost, chosen in updates:
            old = reach.get(mask)
            if old is None or cost < old[0]:
                reach[mask] = (cost, chosen)
    return reach


def cvd_branches(instance: Instance, deletion: DeletionSet):
    """Yield the best completion for every subset Y of the cluster deletion set.

    Each branch solves the remaining cliques with a knapsack whose state also
    records which unbribed deletion-set voters the clique bribes have
    influenced, so influence crossing the deletion boundary is counted exactly.
    """
    graph = support_graph(instance.network)
    deletion.check(graph)
    X = sorted(deletion.vertices)
    rest_graph = graph.subgraph(set(graph.nodes) - deletion.vertices)
    cliques = [sorted(c) for c in sorted(nx.connected_components(rest_graph), key=min)]
    cost_of = {v: instance.costs[v](1) for v in graph.nodes}
    target = support_target(instance)
    base = set(instance.supporters)
    b = instance.budget

    for Y in _subsets(X):
        spent = sum(cost_of[v] for v in Y)
        if spent > b:
            yield Branch(Y, None, frozenset())
            continue
        supporters = base | _influenced_by(graph, Y)
        need = target - len(supporters)
        if need <= 0:
            yield Branch(Y, spent, frozenset(Y))
            continue
        left = b - spent
        ext = [x for x in X if x not in Y and x not in supporters]
        bit = {x: 1 << k for k, x in enumerate(ext)}
        mask_of = {v: sum(bit.get(u, 0) for u in graph[v]) for c in cliques for v in c}

        # table[(mask, cost)] = (gain, chosen bribes)
        table: dict[tuple[int, int], tuple[int, tuple]] = {(0, 0): (0, ())}
        states = 0
        for clique in cliques:
            gain = sum(1 for v in clique if v not in supporters)
            options = _clique_options(clique, cost_of, mask_of, left)
            new = dict(table)
            for (mask, cost), (val, chosen) in table.items():
                for omask, (ocost, obribes) in options.items():
                    key = (mask | omask, cost + ocost)
                    if key[1] > left:
                        continue
                    if key not in new or val + gain > new[key][0]:
                        new[key] = (val + gain, chosen + obribes)
            table = new
            states += len(table)

        found = None
        for (mask, cost), (val, chosen) in table.items():
            if val + bin(mask).count("1") >= need and (found is None or cost < found[0]):
                found = (cost, chosen)
        if found is None:
            yield Branch(Y, None, frozenset(), states)
        else:
            yield Branch(Y, spent + found[0], frozenset(Y) | set(found[1]), states)


def solve_via_cvd(instance: Instance, deletion: DeletionSet | None = None) -> SolveOutcome:
    """Two candidates, linear costs: branch over bribed subsets of a cluster vertex deletion set."""
    _require_two_candidate_majority(instance, "CVD solver")
    _require_undirected_unit(instance, "CVD solver")
    if not all(pi.is_linear for pi in instance.costs):
        raise PreconditionError("CVD solver needs linear costs")
    start = time.perf_counter()
    deletion = deletion or find_deletion_set(support_graph(instance.network), CVD)
    return _pick(instance, cvd_branches(instance, deletion), "cvd", sorted(deletion.vertices), start)


def min_partial_dominator(graph: nx.Graph, counted: set, p: int, k_max: int) -> tuple[frozenset | None, int]:
    """Smallest D (|D| <= k_max) whose closed neighbourhoods cover >= p counted vertices.

    Branch and bound by increasing size; a branch is cut when even the best
    remaining vertices' residual gains cannot reach ``p``. Returns the set
    (or None) and the number of search nodes visited.
    """
    nodes = sorted(graph.nodes)
    closed = {v: ({v} | set(graph[v])) & counted for v in nodes}
    visited = 0
    if p <= 0:
        return frozenset(), visited

    def dfs(start: int, chosen: list, covered: set, k: int):
        nonlocal visited
        visited += 1
        if len(covered) >= p:
            return list(chosen)
        if k == 0:
            return None
        gains = sorted((len(closed[v] - covered) for v in nodes[start:]), reverse=True)
        if len(covered) + sum(gains[:k]) < p:
            return None
        for idx in range(start, len(nodes)):
            v = nodes[idx]
            extra = closed[v] - covered
            if not extra:
                continue
            chosen.append(v)
            found = dfs(idx + 1, chosen, covered | extra, k - 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    for k in range(1, min(k_max, len(nodes)) + 1):
        found = dfs(0, [], set(), k)
        if found is not None:
            return frozenset(found), visited
    return None, visited


def solve_via_partial_domination(instance: Instance, k_max: int | None = None) -> SolveOutcome:
    """Two candidates, unit costs: find the fewest bribes gaining the supporter deficit."""
    _require_unit_two_candidate(instance, "partial-domination solver")
    start = time.perf_counter()
    graph = support_graph(instance.network)
    p = kappa(instance)
    limit = instance.budget if k_max is None else min(k_max, instance.budget)
    counted = set(graph.nodes) - instance.supporters
    dom, visited = min_partial_dominator(graph, counted, p, limit)
    stats = {"p": p, "visited": visited, "seconds": time.perf_counter() - start}
    if dom is None:
        return SolveOutcome.infeasible("partial-dom", **stats)
    s = [0] * instance.n
    for v in dom:
        s[v] = 1
    return outcome_from_witness(instance, s, "partial-dom", k=len(dom), **stats)
