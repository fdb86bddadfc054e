"""Pseudo-polynomial dynamic programs: cluster graphs, directed paths, bounded treewidth."""

from __future__ import annotations

import time
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .decomposition import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    TreeDecomposition,
    build_tree_decomposition,
    make_nice,
)
from .election import (
    MAJORITY,
    Instance,
    PreconditionError,
    SolveOutcome,
    outcome_from_witness,
    support_target,
)
from .graphs import directed_path_order, is_cluster_graph, support_graph

NEG = float("-inf")


def _require_two_candidate_majority(instance: Instance, name: str) -> None:
    if instance.m != 2:
        raise PreconditionError(f"{name} needs exactly two candidates")
    if instance.rule != MAJORITY and instance.threshold is None:
        raise PreconditionError(f"{name} needs the majority rule")


def _require_undirected_unit(instance: Instance, name: str) -> None:
    if not instance.network.is_symmetric_unit:
        raise PreconditionError(f"{name} needs an undirected network with unit weights")


# --------------------------------------------------------------------------
# cluster graphs


@dataclass(frozen=True)
class CliqueSummary:
    clique: int
    cost: int
    gain: int
    members: tuple[int, ...]
    cheapest: int


def knapsack_cliques(costs, gains, budget: int) -> tuple[np.ndarray, np.ndarray]:
    """0/1 knapsack over cliques.

    Returns the final row, ``row[d]`` = largest total gain with cost at most
    ``d``, and the boolean take-matrix used by ``knapsack_selection``.
    """
    row = np.zeros(budget + 1, dtype=np.int64)
    take = np.zeros((len(costs), budget + 1), dtype=bool)
    for i, (c, g) in enumerate(zip(costs, gains)):
        if c > budget or g <= 0:
            continue
        cand = row[: budget + 1 - c] + g
        better = cand > row[c:]
        take[i, c:] = better
        row[c:] = np.where(better, cand, row[c:])
    return row, take


def knapsack_selection(take: np.ndarray, costs, d: int) -> list[int]:
    """Cliques chosen by the table entry for budget ``d``."""
    chosen = []
    for i in range(len(costs) - 1, -1, -1):
        if take[i, d]:
            chosen.append(i)
            d -= costs[i]
    return chosen[::-1]


def clique_summaries(instance: Instance, graph: nx.Graph | None = None) -> list[CliqueSummary]:
    graph = support_graph(instance.network) if graph is None else graph
    sup = instance.supporters
    out = []
    for idx, comp in enumerate(sorted(nx.connected_components(graph), key=min)):
        members = tuple(sorted(comp))
        cheapest = min(members, key=lambda v: (instance.costs[v](1), v))
        gain = sum(1 for v in members if v not in sup)
        out.append(CliqueSummary(idx, instance.costs[cheapest](1), gain, members, cheapest))
    return out


def solve_cluster_dp(instance: Instance) -> SolveOutcome:
    """Pick cliques to flip, one cheapest bribe each, by knapsack over the budget."""
    _require_two_candidate_majority(instance, "cluster DP")
    _require_undirected_unit(instance, "cluster DP")
    graph = support_graph(instance.network)
    if not is_cluster_graph(graph):
        raise PreconditionError("network is not a disjoint union of cliques")
    start = time.perf_counter()
    summaries = clique_summaries(instance, graph)
    need = support_target(instance) - len(instance.supporters)
    stats = {"cliques": len(summaries)}
    if need <= 0:
        return outcome_from_witness(instance, [0] * instance.n, "cluster", seconds=time.perf_counter() - start, **stats)
    b = instance.budget
    costs = [s.cost for s in summaries]
    row, take = knapsack_cliques(costs, [s.gain for s in summaries], b)
    hit = np.nonzero(row >= need)[0]
    stats["seconds"] = time.perf_counter() - start
    if hit.size == 0:
        return SolveOutcome.infeasible("cluster", **stats)
    d = int(hit[0])
    s = [0] * instance.n
    for i in knapsack_selection(take, costs, d):
        s[summaries[i].cheapest] = 1
    stats["seconds"] = time.perf_counter() - start
    return outcome_from_witness(instance, s, "cluster", **stats)


# --------------------------------------------------------------------------
# directed paths


def solve_path_dp(instance: Instance) -> SolveOutcome:
    """Uni-directed path v_n -> ... -> v_1 with linear costs under majority.

    ``table[s][c]`` holds, for the current voter i, the most convinced voters
    among i..n when voter i is shifted ``s`` directly and the suffix costs
    exactly ``c``. Voter i is convinced iff ``s_i + s_{i+1} >= p_i - 1``.
    """
    if instance.rule != MAJORITY and instance.threshold is None:
        raise PreconditionError("path DP needs the majority rule")
    order = directed_path_order(instance.network)
    if order is None:
        raise PreconditionError("network is not a uni-directed path")
    if any(w != 1 for _, _, w in instance.network.arcs):
        raise PreconditionError("path weights must all be 1")
    if not all(pi.is_linear for pi in instance.costs):
        raise PreconditionError("path DP needs linear costs")
    start = time.perf_counter()
    n, m, b = instance.n, instance.m, instance.budget
    tau = [instance.positions[v] - 1 for v in order]
    slope = [instance.costs[v].slope for v in order]

    back: list[list[list[int]]] = [None] * n  # back[i][s][c] = shift of voter i+1
    last = n - 1
    table = [[NEG] * (b + 1) for _ in range(m)]
    for s in range(m):
        c = slope[last] * s
        if c <= b:
            table[s][c] = 1 if s >= tau[last] else 0
    states = m * (b + 1)
    for i in range(n - 2, -1, -1):
        new = [[NEG] * (b + 1) for _ in range(m)]
        ptr = [[-1] * (b + 1) for _ in range(m)]
        for s in range(m):
            own = slope[i] * s
            if own > b:
                continue
            for c in range(own, b + 1):
                rest = c - own
                best, arg = NEG, -1
                for nxt in range(m):
                    v = table[nxt][rest]
                    if v == NEG:
                        continue
                    v += 1 if s + nxt >= tau[i] else 0
                    if v > best:
                        best, arg = v, nxt
                new[s][c] = best
                ptr[s][c] = arg
        table, back[i] = new, ptr
        states += m * (b + 1)

    need = support_target(instance)
    stats = {"states": states}
    for c in range(b + 1):
        s0 = max(range(m), key=lambda s: table[s][c])
        if table[s0][c] != NEG and table[s0][c] >= need:
            shifts = [0] * n
            shifts[0], cur = s0, c
            for i in range(n - 1):
                nxt = back[i][shifts[i]][cur]
                cur -= slope[i] * shifts[i]
                shifts[i + 1] = nxt
            witness = [0] * n
            for pos, v in enumerate(order):
                witness[v] = shifts[pos]
            return outcome_from_witness(instance, witness, "path", seconds=time.perf_counter() - start, **stats)
    return SolveOutcome.infeasible("path", seconds=time.perf_counter() - start, **stats)


# --------------------------------------------------------------------------
# bounded treewidth

# per-vertex bag status
_N, _B, _C, _P = 0, 1, 2, 3  # neutral, bribed, certified influenced, pending influence


@dataclass
class TreewidthResult:
    cost: int | None
    bribed: frozenset
    states: int
    best_by_cost: list


def treewidth_core(
    nice: NiceTreeDecomposition,
    adj: dict,
    counted: set,
    need: int,
    cap: int,
    external: list | None = None,
) -> TreewidthResult:
    """Cheapest set of unit-cost bribes among the decomposition's vertices
    influencing at least ``need`` vertices of ``counted``.

    A vertex is influenced when it is bribed or adjacent to a bribed vertex.
    ``external`` vertices cannot be bribed and never sit in a bag; whether
    each has been influenced is carried as a bitmask. Table keys are
    ``(statuses aligned with the sorted bag, mask, cost)``.
    """
    external = external or []
    ext_bit = {x: 1 << k for k, x in enumerate(external)}
    ext_counted = 0
    for x in external:
        if x in counted:
            ext_counted |= ext_bit[x]
    nbr_mask = {}
    for v in nice.vertices():
        mask = 0
        for u in adj[v]:
            mask |= ext_bit.get(u, 0)
        nbr_mask[v] = mask

    tables: list[dict] = [None] * len(nice.nodes)
    orders: list[tuple] = [None] * len(nice.nodes)
    total_states = 0
    for idx, node in enumerate(nice.nodes):
        order = tuple(sorted(node.bag, key=repr))
        orders[idx] = order
        table: dict = {}

        def offer(key, value, back):
            old = table.get(key)
            if old is None or value > old[0]:
                table[key] = (value, back)

        if node.kind == LEAF:
            table[((), 0, 0)] = (0, None)
        elif node.kind == INTRODUCE:
            child = node.children[0]
            v = node.vertex
            pos = order.index(v)
            corder = orders[child]
            nbr_pos = [k for k, u in enumerate(corder) if u in adj[v]]
            v_counts = v in counted
            for key, (val, _) in tables[child].items():
                st, mask, cost = key
                if cost + 1 <= cap:
                    nst = list(st)
                    gain = 1 if v_counts else 0
                    for k in nbr_pos:
                        if nst[k] == _N and corder[k] in counted:
                            nst[k] = _C
                            gain += 1
                        elif nst[k] == _P:
                            nst[k] = _C
                    nst.insert(pos, _B)
                    offer((tuple(nst), mask | nbr_mask[v], cost + 1), val + gain, (key, True))
                if not v_counts:
                    offer((st[:pos] + (_N,) + st[pos:], mask, cost), val, (key, False))
                elif any(st[k] == _B for k in nbr_pos):
                    offer((st[:pos] + (_C,) + st[pos:], mask, cost), val + 1, (key, False))
                else:
                    offer((st[:pos] + (_N,) + st[pos:], mask, cost), val, (key, False))
                    offer((st[:pos] + (_P,) + st[pos:], mask, cost), val + 1, (key, False))
        elif node.kind == FORGET:
            child = node.children[0]
            pos = orders[child].index(node.vertex)
            for key, (val, _) in tables[child].items():
                st, mask, cost = key
                if st[pos] == _P:
                    continue  # promised influence never materialised
                offer((st[:pos] + st[pos + 1:], mask, cost), val, (key,))
        elif node.kind == JOIN:
            left, right = node.children
            groups: dict = {}
            for key, entry in tables[right].items():
                st = key[0]
                sig = tuple(x == _B for x in st), tuple(x != _N for x in st)
                groups.setdefault(sig, []).append((key, entry[0]))
            for lkey, (lval, _) in tables[left].items():
                lst, lmask, lcost = lkey
                sig = tuple(x == _B for x in lst), tuple(x != _N for x in lst)
                shared_bribes = sum(sig[0])
                overlap = sum(1 for k, x in enumerate(lst) if x != _N and order[k] in counted)
                for rkey, rval in groups.get(sig, ()):
                    rst, rmask, rcost = rkey
                    cost = lcost + rcost - shared_bribes
                    if cost > cap:
                        continue
                    st = tuple(_C if (a == _C or b == _C) else a for a, b in zip(lst, rst))
                    offer((st, lmask | rmask, cost), lval + rval - overlap, (lkey, rkey))
        tables[idx] = table
        total_states += len(table)

    root_table = tables[nice.root]
    best_by_cost: list = [NEG] * (cap + 1)
    best_key: list = [None] * (cap + 1)
    for key, (val, _) in root_table.items():
        _, mask, cost = key
        total = val + bin(mask & ext_counted).count("1")
        if total > best_by_cost[cost]:
            best_by_cost[cost], best_key[cost] = total, key
    for cost in range(cap + 1):
        if best_by_cost[cost] != NEG and best_by_cost[cost] >= need:
            bribed = _collect_bribes(nice, tables, nice.root, best_key[cost])
            return TreewidthResult(cost, frozenset(bribed), total_states, best_by_cost)
    return TreewidthResult(None, frozenset(), total_states, best_by_cost)


def _collect_bribes(nice: NiceTreeDecomposition, tables, root: int, key) -> list:
    bribed = []
    stack = [(root, key)]
    while stack:
        idx, k = stack.pop()
        node = nice.nodes[idx]
        back = tables[idx][k][1]
        if node.kind == LEAF:
            continue
        if node.kind == INTRODUCE:
            child_key, was_bribed = back
            if was_bribed:
                bribed.append(node.vertex)
            stack.append((node.children[0], child_key))
        elif node.kind == FORGET:
            stack.append((node.children[0], back[0]))
        else:
            stack.append((node.children[0], back[0]))
            stack.append((node.children[1], back[1]))
    return bribed


def kappa(instance: Instance) -> int:
    """Supporter deficit max(0, target - supporters)."""
    return max(0, support_target(instance) - len(instance.supporters))


def _require_unit_two_candidate(instance: Instance, name: str) -> None:
    _require_two_candidate_majority(instance, name)
    _require_undirected_unit(instance, name)
    if any(pi(1) != 1 for pi in instance.costs):
        raise PreconditionError(f"{name} needs unit bribery costs")


def solve_treewidth_dp(instance: Instance, dec: TreeDecomposition | NiceTreeDecomposition | None = None) -> SolveOutcome:
    """Two candidates, unit costs and weights, over a nice tree decomposition.

    Voters already topping the preferred candidate are excluded from the
    influence count and added back at the root. The budget axis is capped at
    the supporter deficit, since bribing that many non-supporters always wins.
    """
    _require_unit_two_candidate(instance, "treewidth DP")
    start = time.perf_counter()
    graph = support_graph(instance.network)
    if dec is None:
        dec = build_tree_decomposition(graph)
    if isinstance(dec, TreeDecomposition):
        nice = make_nice(dec, graph)
    else:
        nice = dec
        nice.check()
        TreeDecomposition([n.bag for n in nice.nodes], [(i, c) for i, n in enumerate(nice.nodes) for c in n.children]).validate(graph)
    k = kappa(instance)
    cap = min(instance.budget, k)
    adj = {v: set(graph[v]) for v in graph.nodes}
    counted = set(range(instance.n)) - instance.supporters
    res = treewidth_core(nice, adj, counted, k, cap)
    stats = {
        "width": nice.width,
        "nodes": len(nice),
        "kappa": k,
        "states": res.states,
        "state_bound": 4 ** (nice.width + 1) * (k + 1) * len(nice),
        "seconds": time.perf_counter() - start,
    }
    if res.cost is None:
        return SolveOutcome.infeasible("treewidth", **stats)
    s = [0] * instance.n
    for v in res.bribed:
        s[v] = 1
    return outcome_from_witness(instance, s, "treewidth", **stats)
