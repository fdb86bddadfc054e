import random
from itertools import combinations

import networkx as nx
import pytest

from builders import directed, key, path_arcs, two_candidate
from shiftbribery.dp import solve_cluster_dp, solve_treewidth_dp
from shiftbribery.election import CostFunction, PreconditionError, verify
from shiftbribery.fpt import (
    CVD,
    FVS,
    DeletionSet,
    cvd_branches,
    fvs_branches,
    find_deletion_set,
    min_partial_dominator,
    solve_via_cvd,
    solve_via_fvs,
    solve_via_partial_domination,
)
from shiftbribery.generate import generate_instance
from shiftbribery.graphs import is_cluster_graph, support_graph
from shiftbribery.oracle import brute_force_min_cost, brute_force_partial_dominating


def _paw() -> nx.Graph:
    return nx.Graph([(0, 1), (1, 2), (0, 2), (2, 3)])


def test_deletion_set_examples():
    assert find_deletion_set(nx.path_graph(5), FVS).vertices == frozenset()
    paw = find_deletion_set(_paw(), CVD)
    assert len(paw.vertices) == 1
    for v in paw.vertices:
        assert is_cluster_graph(_paw().subgraph(set(range(4)) - {v}))
    assert len(find_deletion_set(nx.cycle_graph(4), FVS).vertices) == 1


def test_deletion_set_minimum_size():
    rng = random.Random(5)
    for _ in range(30):
        g = nx.gnp_random_graph(rng.randint(1, 7), 0.45, seed=rng.randrange(10**6))
        for kind in (FVS, CVD):
            found = find_deletion_set(g, kind)
            for size in range(len(found.vertices)):
                for cand in combinations(g.nodes, size):
                    with pytest.raises(ValueError):
                        DeletionSet(kind, frozenset(cand)).check(g)


def test_deletion_set_check_rejects():
    with pytest.raises(ValueError):
        DeletionSet(FVS, frozenset()).check(nx.cycle_graph(3))
    with pytest.raises(ValueError):
        find_deletion_set(nx.path_graph(2), "odd-cycle")


def test_fvs_examples():
    forest = two_candidate(nx.path_graph(6), budget=2)
    assert key(solve_via_fvs(forest)) == key(solve_treewidth_dp(forest))

    c4 = two_candidate(nx.cycle_graph(4), budget=1)
    assert key(solve_via_fvs(c4)) == (True, 1)

    g = nx.cycle_graph(5)
    g.add_edges_from((v, v + 5) for v in range(5))
    sun = two_candidate(g, budget=2)
    assert key(solve_via_fvs(sun)) == key(brute_force_min_cost(sun)) == (True, 2)


def test_fvs_branch_count():
    g = nx.complete_graph(4)
    out = solve_via_fvs(two_candidate(g, budget=1))
    assert out.stats["branches"] == 2 ** len(out.stats["deletion_set"]) == 4
    deletion = DeletionSet(FVS, frozenset({0, 1, 2}))
    out = solve_via_fvs(two_candidate(g, budget=1), deletion)
    assert out.stats["branches"] == 8


def test_cvd_examples():
    g = nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(2))
    costs = [CostFunction.linear(c) for c in (2, 1, 3, 2, 2)]
    cluster = two_candidate(g, budget=3, costs=costs)
    assert key(solve_via_cvd(cluster)) == key(solve_cluster_dp(cluster))

    bridge = nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(3))
    bridge.add_edges_from([(6, 0), (6, 3)])
    inst = two_candidate(bridge, budget=1)
    assert solve_via_cvd(inst).feasible == brute_force_min_cost(inst).feasible

    broke = two_candidate(bridge, budget=0)
    assert not solve_via_cvd(broke).feasible


def test_cross_boundary_influence_is_counted():
    # the cheap clique bribe also converts both deletion-set vertices
    g = nx.complete_graph(3)
    g.add_edges_from([(0, 3), (0, 4), (3, 5), (4, 6)])
    inst = two_candidate(g, budget=1)
    out = solve_via_cvd(inst)
    assert key(out) == key(brute_force_min_cost(inst))
    assert key(solve_via_fvs(inst)) == key(brute_force_min_cost(inst))


def test_fpt_preconditions():
    with pytest.raises(PreconditionError):
        solve_via_fvs(directed([(0, 1)] * 3, path_arcs(3), 1))
    with pytest.raises(PreconditionError):
        solve_via_cvd(two_candidate(nx.path_graph(3), 1, costs=[CostFunction.table([0, 1])] * 3))
    with pytest.raises(PreconditionError):
        solve_via_partial_domination(two_candidate(nx.path_graph(3), 1, costs=[CostFunction.linear(2)] * 3))


def test_partial_domination_examples():
    won = two_candidate(nx.path_graph(3), budget=0, supporters={0, 1})
    assert key(solve_via_partial_domination(won, 3)) == (True, 0)

    star = two_candidate(nx.star_graph(6), budget=1)
    assert key(solve_via_partial_domination(star, 1)) == (True, 1)

    stars = nx.disjoint_union(nx.star_graph(3), nx.star_graph(3))
    assert not solve_via_partial_domination(two_candidate(stars, budget=1), 1).feasible
    assert key(solve_via_partial_domination(two_candidate(stars, budget=2), 2)) == (True, 2)


def test_partial_domination_respects_k_max():
    stars = nx.disjoint_union(nx.star_graph(3), nx.star_graph(3))
    assert not solve_via_partial_domination(two_candidate(stars, budget=5), 1).feasible


def test_partial_dominator_is_minimum():
    rng = random.Random(9)
    for _ in range(80):
        n = rng.randint(1, 10)
        g = nx.gnp_random_graph(n, 0.3, seed=rng.randrange(10**6))
        counted = {v for v in g.nodes if rng.random() < 0.7}
        p = rng.randint(0, len(counted))
        found, _ = min_partial_dominator(g, counted, p, n)
        brute = None
        for k in range(n + 1):
            if brute_force_partial_dominating(g, k, p, among=counted) is not None:
                brute = k
                break
        assert found is not None and len(found) == brute


@pytest.mark.parametrize("solver, cls, cost", [
    (solve_via_fvs, "fvs", "identity"),
    (solve_via_cvd, "cvd", "linear"),
    (solve_via_partial_domination, "general", "identity"),
])
def test_fpt_match_oracle_up_to_ten(solver, cls, cost):
    for seed in range(60):
        rng = random.Random(seed)
        inst = generate_instance(cls, rng.randint(1, 10), seed, cost=cost, supporter_frac=rng.random() * 0.4)
        out = solver(inst)
        assert key(out) == key(brute_force_min_cost(inst))
        if out.feasible:
            assert verify(inst, out.witness)


@pytest.mark.parametrize("branches, kind, cls, cost", [
    (fvs_branches, FVS, "fvs", "identity"),
    (cvd_branches, CVD, "cvd", "linear"),
])
def test_every_branch_witness_verifies(branches, kind, cls, cost):
    for seed in range(40):
        inst = generate_instance(cls, 8, seed, supporter_frac=0.2, cost=cost)
        deletion = find_deletion_set(support_graph(inst.network), kind)
        seen = 0
        for br in branches(inst, deletion):
            seen += 1
            if br.cost is None:
                continue
            s = [1 if v in br.bribed else 0 for v in range(inst.n)]
            assert set(br.subset) <= br.bribed
            assert verify(inst, s)
            assert sum(inst.costs[v](1) for v in br.bribed) == br.cost
        assert seen == 2 ** len(deletion.vertices)
