"""Structural tests on influence networks."""

from __future__ import annotations

import networkx as nx

from .election import InfluenceNetwork


def support_graph(network: InfluenceNetwork) -> nx.Graph:
    """Undirected support of the network, with every voter as a node."""
    g = nx.Graph()
    g.add_nodes_from(range(network.n))
    g.add_edges_from(network.undirected_edges())
    return g


def is_complete_unit(network: InfluenceNetwork) -> bool:
    n = network.n
    return len(network.arcs) == n * (n - 1) and all(w == 1 for _, _, w in network.arcs)


def is_cluster_graph(g: nx.Graph) -> bool:
    for comp in nx.connected_components(g):
        k = len(comp)
        if g.subgraph(comp).number_of_edges() != k * (k - 1) // 2:
            return False
    return True


def find_induced_p3(g: nx.Graph) -> tuple[int, int, int] | None:
    """A path u-v-w with u and w non-adjacent, or None for cluster graphs."""
    for v in sorted(g.nodes):
        nbrs = sorted(g[v])
        for a in range(len(nbrs)):
            for b in range(a + 1, len(nbrs)):
                if not g.has_edge(nbrs[a], nbrs[b]):
                    return nbrs[a], v, nbrs[b]
    return None


def transitive_order(network: InfluenceNetwork) -> list[int] | None:
    """Voters by decreasing out-degree if the network is a transitive tournament."""
    n = network.n
    out = network.out_neighbors
    order = sorted(range(n), key=lambda v: -len(out[v]))
    if [len(out[v]) for v in order] != list(range(n - 1, -1, -1)):
        return None
    for a, v in enumerate(order):
        if out[v] != frozenset(order[a + 1:]):
            return None
    return order


def directed_path_order(network: InfluenceNetwork) -> list[int] | None:
    """Voters listed head first when arcs form one path v_k -> ... -> v_1 covering everyone.

    The returned order ``[v_1, ..., v_n]`` has arcs ``(v_{i+1}, v_i)``.
    """
    n = network.n
    if len(network.arcs) != n - 1:
        return None
    succ: dict[int, int] = {}
    indeg = [0] * n
    for j, i, _ in network.arcs:
        if j in succ:
            return None
        succ[j] = i
        indeg[i] += 1
    if any(d > 1 for d in indeg):
        return None
    starts = [v for v in range(n) if indeg[v] == 0]
    if len(starts) != 1:
        return None
    chain = [starts[0]]
    while chain[-1] in succ:
        chain.append(succ[chain[-1]])
        if len(chain) > n:
            return None
    if len(chain) != n:
        return None
    return chain[::-1]
