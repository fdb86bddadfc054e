"""Seeded random instances for each network class the solvers handle."""

from __future__ import annotations

import random

import networkx as nx

from .election import MAJORITY, PLURALITY, CostFunction, InfluenceNetwork, Instance

CLASSES = ("complete", "tournament", "cluster", "path", "forest", "treewidth", "general", "fvs", "cvd")

# classes whose solvers only accept two candidates and unit costs
_UNIT_TWO = {"tournament", "forest", "treewidth", "general", "fvs"}


def random_profile(rng: random.Random, n: int, m: int, preferred: int, supporter_frac: float) -> list[tuple[int, ...]]:
    others = [c for c in range(m) if c != preferred]
    rankings = []
    for _ in range(n):
        rest = others[:]
        rng.shuffle(rest)
        if rng.random() < supporter_frac:
            rankings.append((preferred, *rest))
        else:
            rest.insert(rng.randint(1, m - 1), preferred)
            rankings.append(tuple(rest))
    return rankings


def random_forest(rng: random.Random, n: int, edge_prob: float = 0.8) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for v in range(1, n):
        if rng.random() < edge_prob:
            g.add_edge(v, rng.randrange(v))
    return g


def random_cluster(rng: random.Random, n: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    labels = [rng.randrange(max(1, n // 2)) for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if labels[u] == labels[v]:
                g.add_edge(u, v)
    return g


def random_partial_ktree(rng: random.Random, n: int, width: int, keep: float = 0.7) -> nx.Graph:
    """Random subgraph of a k-tree, so treewidth is at most ``width``."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    cliques = [tuple(range(min(n, width + 1)))]
    for u in range(len(cliques[0])):
        for v in range(u + 1, len(cliques[0])):
            if rng.random() < keep:
                g.add_edge(u, v)
    for v in range(len(cliques[0]), n):
        base = rng.choice(cliques)
        for u in base:
            if rng.random() < keep:
                g.add_edge(u, v)
        if len(base) == width + 1:
            drop = rng.randrange(len(base))
            cliques.append(tuple(x for k, x in enumerate(base) if k != drop) + (v,))
        else:
            cliques.append(base + (v,))
    return g


def _extra_vertices(rng: random.Random, g: nx.Graph, count: int, prob: float = 0.5) -> nx.Graph:
    """Relabel so ``count`` random vertices get arbitrary edges to everyone else."""
    n = g.number_of_nodes()
    extra = rng.sample(range(n), min(count, n))
    for x in extra:
        for v in range(n):
            if v != x and rng.random() < prob:
                g.add_edge(x, v)
    return g


def generate_instance(
    cls: str,
    n: int,
    seed: int,
    *,
    m: int | None = None,
    budget: int | None = None,
    supporter_frac: float = 0.25,
    cost: str = "identity",
    rule: str = MAJORITY,
    width: int = 2,
) -> Instance:
    """Deterministic random instance of ``cls``; the same arguments give the same instance."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; choose from {', '.join(CLASSES)}")
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= supporter_frac <= 1:
        raise ValueError("supporter fraction must lie in [0, 1]")
    if cost not in ("identity", "linear"):
        raise ValueError(f"unknown cost kind {cost!r}")
    if rule not in (MAJORITY, PLURALITY):
        raise ValueError(f"unknown rule {rule!r}")
    if rule == PLURALITY and cls != "complete":
        raise ValueError("plurality instances are only generated for the complete class")
    rng = random.Random(seed)
    if cls in _UNIT_TWO or cls == "cvd" or cls == "cluster":
        if m not in (None, 2):
            raise ValueError(f"class {cls} needs exactly two candidates")
        m = 2
    elif m is None:
        m = rng.randint(2, 3)
    if m < 2:
        raise ValueError("need at least two candidates")
    if cls in _UNIT_TWO and cost != "identity":
        raise ValueError(f"class {cls} needs unit costs")
    if budget is None:
        budget = rng.randint(0, 5)

    if cls == "complete":
        arcs = [(j, i, 1) for j in range(n) for i in range(n) if i != j]
        network = InfluenceNetwork(n, tuple(arcs))
    elif cls == "tournament":
        order = list(range(n))
        rng.shuffle(order)
        arcs = [(order[a], order[b], 1) for a in range(n) for b in range(a + 1, n)]
        network = InfluenceNetwork(n, tuple(arcs))
    elif cls == "path":
        order = list(range(n))
        rng.shuffle(order)
        network = InfluenceNetwork(n, tuple((order[k + 1], order[k], 1) for k in range(n - 1)))
    else:
        if cls == "cluster":
            g = random_cluster(rng, n)
        elif cls == "forest":
            g = random_forest(rng, n)
        elif cls == "treewidth":
            g = random_partial_ktree(rng, n, width)
        elif cls == "general":
            g = nx.gnp_random_graph(n, 0.35, seed=rng.randrange(2**32))
        elif cls == "fvs":
            g = _extra_vertices(rng, random_forest(rng, n), rng.randint(1, 2))
        else:
            g = _extra_vertices(rng, random_cluster(rng, n), rng.randint(1, 2))
        network = InfluenceNetwork.undirected(n, sorted(g.edges))

    preferred = m - 1
    rankings = random_profile(rng, n, m, preferred, supporter_frac)
    if cost == "identity":
        costs = [CostFunction.identity()] * n
    else:
        costs = [CostFunction.linear(rng.randint(1, 3)) for _ in range(n)]
    return Instance(
        num_candidates=m,
        preferred=preferred,
        profile=rankings,
        network=network,
        costs=costs,
        budget=budget,
        rule=rule,
        metadata={"class": cls, "seed": seed},
    )
