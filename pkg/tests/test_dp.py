import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import directed, key, path_arcs, two_candidate
from shiftbribery.decomposition import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    DecompositionError,
    NiceNode,
    NiceTreeDecomposition,
    TreeDecomposition,
    build_tree_decomposition,
    make_nice,
)
from shiftbribery.dp import (
    clique_summaries,
    knapsack_cliques,
    solve_cluster_dp,
    solve_path_dp,
    solve_treewidth_dp,
    treewidth_core,
)
from shiftbribery.election import CostFunction, PreconditionError, verify
from shiftbribery.generate import generate_instance, random_partial_ktree
from shiftbribery.graphs import support_graph
from shiftbribery.oracle import brute_force_min_cost


def _cliques(*sizes) -> nx.Graph:
    g = nx.Graph()
    start = 0
    for k in sizes:
        g = nx.disjoint_union(g, nx.complete_graph(k)) if start else nx.complete_graph(k)
        start += k
    return g


# --- cluster ----------------------------------------------------------------


def test_cluster_examples():
    inst = two_candidate(_cliques(3, 2), budget=1)
    out = solve_cluster_dp(inst)
    assert key(out) == (True, 1) == key(brute_force_min_cost(inst))
    assert sum(out.witness[:3]) == 1

    won = two_candidate(_cliques(2, 2), budget=0, supporters={0, 1, 2})
    assert key(solve_cluster_dp(won)) == (True, 0)

    costly = two_candidate(_cliques(2, 2), budget=5, costs=[CostFunction.linear(3)] * 4)
    assert not solve_cluster_dp(costly).feasible
    assert not brute_force_min_cost(costly).feasible


def test_cluster_summaries():
    costs = [CostFunction.linear(c) for c in (4, 2, 3, 1, 5)]
    inst = two_candidate(_cliques(3, 2), budget=3, supporters={0}, costs=costs)
    sums = clique_summaries(inst)
    assert [(s.cost, s.gain, s.cheapest) for s in sums] == [(2, 2, 1), (1, 2, 3)]


def test_cluster_witness_structure():
    for seed in range(80):
        inst = generate_instance("cluster", random.Random(seed).randint(1, 8), seed, cost="linear")
        out = solve_cluster_dp(inst)
        if not out.feasible:
            continue
        for comp in nx.connected_components(support_graph(inst.network)):
            bribed = [v for v in comp if out.witness[v]]
            assert len(bribed) <= 1
            if bribed:
                assert inst.costs[bribed[0]](1) == min(inst.costs[v](1) for v in comp)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 6), st.integers(0, 5)), max_size=8),
    st.integers(0, 12),
)
def test_knapsack_row_monotone(items, budget):
    costs = [c for c, _ in items]
    gains = [g for _, g in items]
    previous = np.zeros(budget + 1, dtype=np.int64)
    for i in range(len(items) + 1):
        row, _ = knapsack_cliques(costs[:i], gains[:i], budget)
        assert np.all(np.diff(row) >= 0)
        assert np.all(row >= previous)
        previous = row


def test_cluster_preconditions():
    with pytest.raises(PreconditionError):
        solve_cluster_dp(two_candidate(nx.path_graph(3), 1))


# --- path ---------------------------------------------------------------------


def test_path_examples():
    inst = directed([(0, 1)] * 3, path_arcs(3), 1)
    out = solve_path_dp(inst)
    assert key(out) == (True, 1)
    assert verify(inst, (0, 0, 1))

    won = directed([(1, 0)] * 3, path_arcs(3), 0)
    assert key(solve_path_dp(won)) == (True, 0)

    three = directed([(0, 1, 2)] * 5, path_arcs(5), 3, m=3, preferred=2)
    assert not solve_path_dp(three).feasible
    assert key(solve_path_dp(three.replace(budget=10))) == (True, 4)
    assert brute_force_min_cost(three.replace(budget=10)).witness == (0, 0, 0, 2, 2)


def test_path_in_shuffled_order():
    # the same path with voters relabelled
    order = [3, 0, 4, 1, 2]
    arcs = [(order[k + 1], order[k], 1) for k in range(4)]
    inst = directed([(0, 1, 2)] * 5, arcs, 4, m=3, preferred=2)
    assert key(solve_path_dp(inst)) == key(brute_force_min_cost(inst))


def test_path_preconditions():
    with pytest.raises(PreconditionError):
        solve_path_dp(directed([(0, 1)] * 3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)], 1))
    with pytest.raises(PreconditionError):
        solve_path_dp(directed([(0, 1)] * 2, [(1, 0, 1)], 1, costs=[CostFunction.table([0, 1])] * 2))


def test_path_matches_oracle():
    for seed in range(150):
        inst = generate_instance("path", random.Random(seed).randint(1, 7), seed, cost="linear")
        assert key(solve_path_dp(inst)) == key(brute_force_min_cost(inst))


# --- decompositions ------------------------------------------------------------


def test_decomposition_widths():
    assert build_tree_decomposition(nx.path_graph(5)).width == 1
    assert build_tree_decomposition(nx.complete_graph(4)).width == 3
    assert build_tree_decomposition(nx.cycle_graph(5)).width == 2


def test_decomposition_validation_names_edge():
    g = nx.Graph([("a", "b"), ("b", "c"), ("a", "c")])
    dec = TreeDecomposition([frozenset("ab"), frozenset("bc")], [(0, 1)])
    with pytest.raises(DecompositionError, match=r"\{'a', 'c'\}"):
        dec.validate(g)
    with pytest.raises(DecompositionError, match="vertex 'c' appears in no bag"):
        TreeDecomposition([frozenset("ab")]).validate(nx.Graph([("a", "b"), ("c", "d")]))


def test_make_nice_single_bag():
    nice = make_nice(TreeDecomposition([frozenset("ab")]))
    assert [(n.kind, n.vertex) for n in nice.nodes] == [
        (LEAF, None),
        (INTRODUCE, "a"),
        (INTRODUCE, "b"),
        (FORGET, "a"),
        (FORGET, "b"),
    ]


def test_make_nice_forgets_before_introducing():
    nice = make_nice(TreeDecomposition([frozenset("ab"), frozenset("bc")], [(0, 1)]))
    seq = [(n.kind, n.vertex) for n in nice.nodes if n.kind != LEAF]
    assert seq.index((FORGET, "c")) < seq.index((INTRODUCE, "a"))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 3), st.integers(0, 10**6))
def test_nice_decomposition_shape(n, width, seed):
    g = random_partial_ktree(random.Random(seed), n, width)
    dec = build_tree_decomposition(g)
    dec.validate(g)
    nice = make_nice(dec, g)
    nice.check()
    assert nice.vertices() == set(g.nodes)
    for node in nice.nodes:
        kids = [nice.nodes[c] for c in node.children]
        if node.kind in (INTRODUCE, FORGET):
            assert len(node.bag ^ kids[0].bag) == 1
        if node.kind == JOIN:
            assert kids[0].bag == kids[1].bag == node.bag


def test_decomposition_records_round_trip():
    g = nx.cycle_graph(6)
    dec = build_tree_decomposition(g)
    again = TreeDecomposition.from_records(dec.to_records())
    again.validate(g)
    assert sorted(map(sorted, again.bags)) == sorted(map(sorted, dec.bags))


# --- treewidth ------------------------------------------------------------------


def test_treewidth_examples():
    n = 5
    edgeless = two_candidate(nx.empty_graph(n), budget=3)
    out = solve_treewidth_dp(edgeless)
    assert key(out) == (True, 3) and sum(out.witness) == 3

    star = two_candidate(nx.star_graph(4), budget=1)
    out = solve_treewidth_dp(star)
    assert key(out) == (True, 1) and out.witness[0] == 1

    path = two_candidate(nx.path_graph(7), budget=2)
    out = solve_treewidth_dp(path)
    assert key(out) == (True, 2) == key(brute_force_min_cost(path))
    assert verify(path, (0, 1, 0, 0, 1, 0, 0))


def test_treewidth_accepts_external_decomposition():
    g = nx.cycle_graph(6)
    inst = two_candidate(g, budget=2)
    dec = TreeDecomposition([frozenset(range(6))])
    out = solve_treewidth_dp(inst, dec)
    assert out.stats["width"] == 5
    assert key(out) == key(brute_force_min_cost(inst))
    bad = TreeDecomposition([frozenset({0, 1, 2}), frozenset({3, 4, 5})], [(0, 1)])
    with pytest.raises(DecompositionError):
        solve_treewidth_dp(inst, bad)


def _edge_chain(u, v, offset=0):
    """Nice decomposition of the single edge u-v, rooted at an empty bag."""
    return [
        NiceNode(LEAF, frozenset()),
        NiceNode(INTRODUCE, frozenset({u}), u, (offset,)),
        NiceNode(INTRODUCE, frozenset({u, v}), v, (offset + 1,)),
        NiceNode(FORGET, frozenset({v}), u, (offset + 2,)),
        NiceNode(FORGET, frozenset(), v, (offset + 3,)),
    ]


def test_treewidth_join_adds_disjoint_sides():
    nodes = _edge_chain(0, 1) + _edge_chain(2, 3, offset=5) + [NiceNode(JOIN, frozenset(), None, (4, 9))]
    nice = NiceTreeDecomposition(nodes, 10)
    nice.check()
    adj = {0: {1}, 1: {0}, 2: {3}, 3: {2}}
    joined = treewidth_core(nice, adj, set(adj), 4, 2)
    left = treewidth_core(NiceTreeDecomposition(_edge_chain(0, 1), 4), adj, {0, 1}, 2, 2)
    right = treewidth_core(NiceTreeDecomposition(_edge_chain(2, 3), 4), adj, {2, 3}, 2, 2)
    for c in range(3):
        best = max(left.best_by_cost[a] + right.best_by_cost[c - a] for a in range(c + 1))
        assert joined.best_by_cost[c] == best
    assert joined.cost == 2


def test_treewidth_preconditions():
    with pytest.raises(PreconditionError):
        solve_treewidth_dp(directed([(0, 1)] * 3, path_arcs(3), 1))
    with pytest.raises(PreconditionError):
        solve_treewidth_dp(two_candidate(nx.path_graph(3), 1, costs=[CostFunction.linear(2)] * 3))


def test_treewidth_matches_oracle_up_to_ten():
    for seed in range(120):
        rng = random.Random(seed)
        cls = rng.choice(["treewidth", "general", "forest"])
        inst = generate_instance(cls, rng.randint(1, 10), seed, supporter_frac=rng.random() * 0.5)
        out = solve_treewidth_dp(inst)
        assert key(out) == key(brute_force_min_cost(inst))
        assert out.stats["states"] <= out.stats["state_bound"]
