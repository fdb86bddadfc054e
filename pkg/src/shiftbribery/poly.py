"""Polynomial-time solvers for complete networks and transitive tournaments."""

from __future__ import annotations

import time

from .election import (
    MAJORITY,
    PLURALITY,
    Instance,
    PreconditionError,
    PreferenceProfile,
    SolveOutcome,
    outcome_from_witness,
    preferred_wins,
    support_target,
    verify,
    _shift_up,
)
from .graphs import is_complete_unit, transitive_order


def position_vector(instance: Instance) -> list[int]:
    return list(instance.positions)


def _require_complete_linear(instance: Instance) -> None:
    if not is_complete_unit(instance.network):
        raise PreconditionError("network must be complete with every weight equal to 1")
    if not all(pi.is_linear for pi in instance.costs):
        raise PreconditionError("cost functions must be linear")


def uniform_shift_profile(instance: Instance, alpha: int) -> PreferenceProfile:
    """Profile after every voter moves the preferred candidate up ``alpha`` places."""
    c = instance.preferred
    return PreferenceProfile(tuple(_shift_up(r, c, alpha) for r in instance.profile.rankings))


def wins_at_uniform_shift(instance: Instance, alpha: int) -> bool:
    return preferred_wins(instance, uniform_shift_profile(instance, alpha))


def _realize(instance: Instance, alpha: int, algorithm: str, **stats) -> SolveOutcome:
    # Every voter feels the total direct shift, so put all of it on the cheapest voter.
    slopes = [pi.slope for pi in instance.costs]
    cheapest = min(range(instance.n), key=lambda i: (slopes[i], i))
    cost = slopes[cheapest] * alpha
    stats.update(alpha=alpha, min_cost=cost)
    if cost > instance.budget:
        return SolveOutcome.infeasible(algorithm, **stats)
    s = [0] * instance.n
    s[cheapest] = alpha
    return outcome_from_witness(instance, s, algorithm, **stats)


def solve_complete_majority(instance: Instance) -> SolveOutcome:
    """Complete unit-weight network under majority with linear costs.

    The preferred candidate tops voter i exactly when the total shift reaches
    ``p_i - 1``, so the required total shift is an order statistic of those
    thresholds.
    """
    _require_complete_linear(instance)
    if instance.rule != MAJORITY and instance.threshold is None:
        raise PreconditionError("solve_complete_majority needs the majority rule")
    start = time.perf_counter()
    need = support_target(instance)
    if need > instance.n:
        return SolveOutcome.infeasible("complete-majority", seconds=time.perf_counter() - start)
    if need <= 0:
        alpha = 0
    else:
        alpha = sorted(p - 1 for p in instance.positions)[need - 1]
    return _realize(instance, alpha, "complete-majority", seconds=time.perf_counter() - start)


def solve_complete_plurality(instance: Instance) -> SolveOutcome:
    """Complete unit-weight network under plurality with linear costs.

    Winning is monotone in the uniform shift, and the smallest winning shift
    is 0 or one of the thresholds ``p_i - 1``; binary search over that set.
    """
    _require_complete_linear(instance)
    if instance.rule != PLURALITY or instance.threshold is not None:
        raise PreconditionError("solve_complete_plurality needs the plurality rule")
    start = time.perf_counter()
    options = sorted({0} | {p - 1 for p in instance.positions})
    probes = 0
    lo, hi = 0, len(options) - 1
    # At the largest option the preferred candidate tops every ballot.
    while lo < hi:
        mid = (lo + hi) // 2
        probes += 1
        if wins_at_uniform_shift(instance, options[mid]):
            hi = mid
        else:
            lo = mid + 1
    return _realize(
        instance, options[lo], "complete-plurality", probes=probes, seconds=time.perf_counter() - start
    )


def solve_transitive_tournament(instance: Instance) -> SolveOutcome:
    """Two candidates on a transitive tournament with unit costs and weights.

    Bribing the first voter (by decreasing out-degree) that does not already
    top the preferred candidate converts it and everyone after it.
    """
    start = time.perf_counter()
    order = transitive_order(instance.network)
    if order is None:
        raise PreconditionError("network is not a transitive tournament")
    if any(w != 1 for _, _, w in instance.network.arcs):
        raise PreconditionError("tournament weights must all be 1")
    if instance.m != 2:
        raise PreconditionError("tournament solver needs exactly two candidates")
    if instance.rule != MAJORITY and instance.threshold is None:
        raise PreconditionError("tournament solver needs the majority rule")
    if any(pi(1) != 1 for pi in instance.costs):
        raise PreconditionError("tournament solver needs unit bribery costs")

    zero = [0] * instance.n
    if verify(instance, zero):
        return outcome_from_witness(instance, zero, "tournament", seconds=time.perf_counter() - start)
    supporters = instance.supporters
    first = next((v for v in order if v not in supporters), None)
    if first is None or instance.budget < 1:
        return SolveOutcome.infeasible("tournament", seconds=time.perf_counter() - start)
    s = list(zero)
    s[first] = 1
    if not verify(instance, s):
        # Only possible when a supporter-count threshold exceeds n.
        return SolveOutcome.infeasible("tournament", seconds=time.perf_counter() - start)
    return outcome_from_witness(instance, s, "tournament", bribed=first, seconds=time.perf_counter() - start)


def minimal_winning_shift(instance: Instance) -> int | None:
    """Smallest uniform shift in 0..m-1 that wins, by plain scan."""
    for alpha in range(instance.m):
        if wins_at_uniform_shift(instance, alpha):
            return alpha
    return None

