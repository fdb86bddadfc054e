from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import directed, path_arcs
from shiftbribery.election import (
    MAJORITY,
    NO_MAJORITY,
    PLURALITY,
    CostFunction,
    InfluenceNetwork,
    Instance,
    InstanceError,
    PreferenceProfile,
    SolveOutcome,
    apply_shift,
    effective_shifts,
    shift_cost,
    verify,
    winner,
)


def test_effective_shifts_follow_in_arcs():
    inst = directed([(0, 1)] * 3, path_arcs(3), budget=1)
    assert effective_shifts(inst, [0, 0, 1]) == [0, 1, 1]
    assert effective_shifts(inst, [0, 0, 0]) == [0, 0, 0]


def test_fractional_weight_floors():
    inst = directed([(0, 1)] * 2, [(1, 0, Fraction(1, 2))], budget=1)
    assert effective_shifts(inst, [0, 1]) == [0, 1]


def test_fractional_weight_accumulates_with_larger_shift():
    inst = directed([(0, 1, 2)] * 2, [(1, 0, Fraction(1, 2))], budget=4, m=3, preferred=2)
    assert effective_shifts(inst, [0, 2]) == [1, 2]


def test_dimension_mismatch_rejected():
    inst = directed([(0, 1)] * 3, [], budget=1)
    with pytest.raises(InstanceError):
        effective_shifts(inst, [0, 0])
    with pytest.raises(InstanceError):
        shift_cost(inst, [0, 0, 2])


def test_apply_shift_moves_to_top_and_clamps():
    inst = directed([(0, 1, 2)], [], budget=2, m=3, preferred=2)
    assert apply_shift(inst, [2]).rankings == ((2, 0, 1),)
    assert apply_shift(inst, [0]).rankings == ((0, 1, 2),)
    two = directed([(0, 1), (0, 1)], [(0, 1, 5)], budget=1)
    assert apply_shift(two, [1, 0]).rankings == ((1, 0), (1, 0))


def test_winner_majority_and_plurality():
    p = PreferenceProfile([(0, 1), (1, 0), (1, 0)])
    assert winner(p, MAJORITY, (0, 1)) == 1
    p = PreferenceProfile([(0, 1, 2), (1, 0, 2), (2, 0, 1)])
    assert winner(p, PLURALITY, (0, 1, 2)) == 0
    assert winner(p, PLURALITY, (2, 1, 0)) == 2
    p = PreferenceProfile([(0, 1), (1, 0)])
    assert winner(p, MAJORITY, (0, 1)) == NO_MAJORITY


def test_shift_cost_examples():
    inst = directed([(0, 1)] * 3, [], budget=5)
    assert shift_cost(inst, [1, 0, 1]) == 2
    lin = directed([(0, 1, 2)] * 2, [], budget=9, m=3, preferred=2, costs=[CostFunction.linear(3), CostFunction.linear(5)])
    assert shift_cost(lin, [2, 0]) == 6
    assert shift_cost(lin, [0, 0]) == 0


def test_table_costs():
    pi = CostFunction.table([0, 2, 7])
    assert [pi(s) for s in range(3)] == [0, 2, 7]
    with pytest.raises(InstanceError):
        CostFunction.table([1, 2])


def test_verify_examples():
    won = directed([(1, 0)] * 3, [], budget=0)
    assert verify(won, [0, 0, 0])
    broke = directed([(0, 1)] * 3, [], budget=0)
    assert not verify(broke, [1, 0, 0])
    path = directed([(0, 1)] * 3, path_arcs(3), budget=1)
    assert verify(path, [0, 0, 1])


def test_threshold_mode():
    inst = directed([(0, 1)] * 4, [], budget=4).replace(threshold=1)
    assert verify(inst, [1, 0, 0, 0])
    assert not verify(inst.replace(threshold=2), [1, 0, 0, 0])


@pytest.mark.parametrize(
    "kwargs",
    [
        {"num_candidates": 1},
        {"preferred": 5},
        {"budget": -1},
        {"rule": "borda"},
        {"tiebreak": (0, 0)},
        {"profile": [(0, 0)] * 2},
    ],
)
def test_instance_invariants(kwargs):
    base = dict(
        num_candidates=2,
        preferred=1,
        profile=[(0, 1)] * 2,
        network=InfluenceNetwork(2),
        costs=[CostFunction.identity()] * 2,
        budget=1,
    )
    base.update(kwargs)
    with pytest.raises(InstanceError):
        Instance(**base)


def test_network_invariants():
    with pytest.raises(InstanceError):
        InfluenceNetwork(2, ((0, 0, 1),))
    with pytest.raises(InstanceError):
        InfluenceNetwork(2, ((0, 1, 1), (0, 1, 2)))
    with pytest.raises(InstanceError):
        InfluenceNetwork(2, ((0, 1, -1),))


def test_outcome_consistency():
    with pytest.raises(ValueError):
        SolveOutcome(True, None, None, "x")
    assert not SolveOutcome.infeasible("x").feasible


@st.composite
def instances_with_vectors(draw):
    n = draw(st.integers(1, 6))
    m = draw(st.integers(2, 4))
    rankings = [tuple(draw(st.permutations(range(m)))) for _ in range(n)]
    pairs = [(j, i) for j in range(n) for i in range(n) if i != j]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    arcs = [(j, i, Fraction(draw(st.integers(0, 4)), draw(st.integers(1, 3)))) for j, i in chosen]
    inst = directed(rankings, arcs, budget=3 * n, m=m, preferred=0)
    s = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    t = [draw(st.integers(x, m - 1)) for x in s]
    return inst, s, t


@settings(max_examples=150, deadline=None)
@given(instances_with_vectors())
def test_propagation_properties(data):
    inst, s, t = data
    eff_s, eff_t = effective_shifts(inst, s), effective_shifts(inst, t)
    assert all(a <= b for a, b in zip(eff_s, eff_t))
    for r in apply_shift(inst, s).rankings:
        assert sorted(r) == list(range(inst.m))
    assert shift_cost(inst, s) == sum(inst.costs[i](x) for i, x in enumerate(s))
    # an extra arc from an unshifted voter changes nothing
    zero = [v for v in range(inst.n) if s[v] == 0]
    existing = set(inst.network.weights)
    extra = [(j, i) for j in zero for i in range(inst.n) if i != j and (j, i) not in existing]
    if extra:
        j, i = extra[0]
        bigger = inst.replace(network=InfluenceNetwork(inst.n, inst.network.arcs + ((j, i, 3),)))
        assert effective_shifts(bigger, s) == eff_s


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7), st.data())
def test_two_candidate_unit_weight_characterisation(n, data):
    tops = data.draw(st.lists(st.booleans(), min_size=n, max_size=n))
    rankings = [(1, 0) if t else (0, 1) for t in tops]
    pairs = [(j, i) for j in range(n) for i in range(n) if i != j]
    arcs = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    inst = directed(rankings, [(j, i, 1) for j, i in arcs], budget=n)
    s = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    after = apply_shift(inst, s)
    for i in range(n):
        expect = tops[i] or s[i] == 1 or any(s[j] for j, k in arcs if k == i)
        assert (after.rankings[i][0] == 1) == expect
