"""Gadget builders that turn domination and covering problems into bribery instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import networkx as nx

from .election import CostFunction, InfluenceNetwork, Instance, majority_target

C1, C2 = 0, 1


@dataclass
class ReductionRecord:
    """A produced instance together with how to map source solutions into it.

    ``forward`` takes a source solution (a vertex set, or a collection of set
    indices for set cover) and returns a shift vector for ``instance``.
    """

    source: str
    params: dict[str, Any]
    instance: Instance
    forward: Callable[[Any], list[int]]
    target: int
    budget: int
    layout: dict[str, list[int]] = field(default_factory=dict)


def _index(graph: nx.Graph) -> tuple[list, dict]:
    nodes = sorted(graph.nodes)
    return nodes, {v: i for i, v in enumerate(nodes)}


def _two_candidate_instance(n: int, network: InfluenceNetwork, costs, budget: int, threshold=None, metadata=None) -> Instance:
    return Instance(
        num_candidates=2,
        preferred=C2,
        profile=[(C1, C2)] * n,
        network=network,
        costs=costs,
        budget=budget,
        threshold=threshold,
        metadata=metadata or {},
    )


def _bribe(n: int, voters) -> list[int]:
    s = [0] * n
    for v in voters:
        s[v] = 1
    return s


def reduce_ds_to_sbon_general(graph: nx.Graph, k: int) -> ReductionRecord:
    """Graph voters plus n-1 isolated voters, so winning means dominating the graph."""
    nodes, idx = _index(graph)
    n = len(nodes)
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    if k < 0:
        raise ValueError("k must be non-negative")
    total = 2 * n - 1
    edges = [(idx[u], idx[v]) for u, v in graph.edges]
    network = InfluenceNetwork.undirected(total, edges)
    meta = {"source": "ds", "k": k, "vertices": n}
    inst = _two_candidate_instance(total, network, [CostFunction.identity()] * total, k, metadata=meta)
    return ReductionRecord(
        source="ds",
        params={"k": k, "vertices": nodes},
        instance=inst,
        forward=lambda dom: _bribe(total, (idx[v] for v in dom)),
        target=majority_target(total),
        budget=k,
        layout={"graph": list(range(n)), "isolated": list(range(n, total))},
    )


def reduce_ds_to_sbon_complete(graph: nx.Graph, k: int) -> ReductionRecord:
    """Complete weighted network: weight 1 on graph edges and 1/(2k) on every other pair.

    Padding voters are priced at k+1 per unit, so with budget k only graph
    voters can be bribed and the light arcs never round up to a shift.
    """
    if k < 1:
        raise ValueError("k must be at least 1: the filler weight 1/(2k) is undefined for k = 0")
    nodes, idx = _index(graph)
    n = len(nodes)
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    total = 2 * n - 1
    edges = {frozenset((idx[u], idx[v])) for u, v in graph.edges}
    light = Fraction(1, 2 * k)
    arcs = []
    for j in range(total):
        for i in range(total):
            if i != j:
                arcs.append((j, i, 1 if frozenset((i, j)) in edges else light))
    costs = [CostFunction.identity()] * n + [CostFunction.linear(k + 1)] * (n - 1)
    meta = {"source": "ds-complete", "k": k, "vertices": n}
    inst = _two_candidate_instance(total, InfluenceNetwork(total, tuple(arcs)), costs, k, metadata=meta)
    return ReductionRecord(
        source="ds-complete",
        params={"k": k, "vertices": nodes},
        instance=inst,
        forward=lambda dom: _bribe(total, (idx[v] for v in dom)),
        target=majority_target(total),
        budget=k,
        layout={"graph": list(range(n)), "padding": list(range(n, total))},
    )


def reduce_setcover_to_sbon_bipartite(n: int, sets, k: int, directed: bool = False) -> ReductionRecord:
    """Bipartite element/set network with 2(n+m) voters and budget k.

    Elements are ``1..n`` as in the usual statement. Voters are laid out as
    element voters, m-k+1 filler voters joined to every set voter, the m set
    voters, then n+k-1 isolated voters. With ``directed`` every arc points
    from a set voter toward the left side, so the network is acyclic.
    """
    sets = [frozenset(s) for s in sets]
    m = len(sets)
    if n < 1:
        raise ValueError("universe must be non-empty")
    if not 1 <= k <= m:
        raise ValueError(f"k must lie in 1..{m}")
    for s in sets:
        if not s <= set(range(1, n + 1)):
            raise ValueError(f"set {sorted(s)} has elements outside 1..{n}")
    elements = list(range(n))
    fillers = list(range(n, n + m - k + 1))
    set_voters = list(range(fillers[-1] + 1, fillers[-1] + 1 + m))
    isolated = list(range(set_voters[-1] + 1, set_voters[-1] + 1 + n + k - 1))
    total = 2 * (n + m)
    assert isolated[-1] + 1 == total

    pairs = [(set_voters[r], elements[e - 1]) for r, s in enumerate(sets) for e in sorted(s)]
    pairs += [(set_voters[r], f) for r in range(m) for f in fillers]
    if directed:
        network = InfluenceNetwork(total, tuple((j, i, 1) for j, i in pairs))
    else:
        network = InfluenceNetwork.undirected(total, pairs)
    target = n + m + 1
    meta = {"source": "setcover", "k": k, "universe": n, "sets": [sorted(s) for s in sets], "directed": directed}
    inst = _two_candidate_instance(total, network, [CostFunction.identity()] * total, k, metadata=meta)

    def forward(cover) -> list[int]:
        chosen = sorted(set(cover))
        if len(chosen) > k:
            raise ValueError(f"cover uses {len(chosen)} sets but k = {k}")
        bribed = [set_voters[r] for r in chosen]
        # each extra bribe on an isolated voter adds exactly one supporter
        bribed += isolated[: k - len(chosen)]
        return _bribe(total, bribed)

    return ReductionRecord(
        source="setcover",
        params={"universe": n, "sets": sets, "k": k, "directed": directed},
        instance=inst,
        forward=forward,
        target=target,
        budget=k,
        layout={"elements": elements, "fillers": fillers, "sets": set_voters, "isolated": isolated},
    )


def reduce_ktds_to_sbon(graph: nx.Graph, k: int, t: int | None = None) -> ReductionRecord:
    """Same network as the graph; the preferred candidate needs t supporters."""
    nodes, idx = _index(graph)
    n = len(nodes)
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    if t is None:
        t = majority_target(n)
    if k < 0 or not 0 <= t <= n:
        raise ValueError(f"need k >= 0 and 0 <= t <= {n}")
    network = InfluenceNetwork.undirected(n, [(idx[u], idx[v]) for u, v in graph.edges])
    meta = {"source": "ktds", "k": k, "t": t}
    inst = _two_candidate_instance(n, network, [CostFunction.identity()] * n, k, threshold=t, metadata=meta)
    return ReductionRecord(
        source="ktds",
        params={"k": k, "t": t, "vertices": nodes},
        instance=inst,
        forward=lambda dom: _bribe(n, (idx[v] for v in dom)),
        target=t,
        budget=k,
    )


def pad_ds_to_ktds(graph: nx.Graph, k: int | None = None) -> tuple[nx.Graph, int | None, int]:
    """Add n-1 isolated vertices; a k-dominating set then corresponds to (k, n)-coverage."""
    nodes, idx = _index(graph)
    n = len(nodes)
    padded = nx.Graph()
    padded.add_nodes_from(range(2 * n - 1) if n else ())
    padded.add_edges_from((idx[u], idx[v]) for u, v in graph.edges)
    return padded, k, n
