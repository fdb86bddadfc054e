"""Election model, shift propagation over an influence network, and verification.

Voters and candidates are 0-indexed. A ranking lists candidates from the top
position down, so ``ranking[0]`` is the voter's favourite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Sequence

MAJORITY = "majority"
PLURALITY = "plurality"
RULES = (MAJORITY, PLURALITY)

# Returned by majority when no candidate tops a strict majority of ballots.
NO_MAJORITY = -1


class InstanceError(ValueError):
    """An instance or shift vector violates the model's invariants."""


class PreconditionError(ValueError):
    """A solver was handed an instance outside the class it solves."""


@dataclass(frozen=True)
class CostFunction:
    """Price of shifting the preferred candidate ``s`` positions for one voter.

    ``kind`` is one of ``identity`` (s), ``linear`` (coefficient * s) or
    ``table`` (explicit values for s = 0..m-1).
    """

    kind: str = "identity"
    coefficient: int = 1
    values: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("identity", "linear", "table"):
            raise InstanceError(f"unknown cost kind {self.kind!r}")
        if self.kind == "linear" and self.coefficient < 0:
            raise InstanceError("linear cost coefficient must be non-negative")
        if self.kind == "table":
            if not self.values or self.values[0] != 0:
                raise InstanceError("cost table must start with pi(0) = 0")
            if any(v < 0 for v in self.values):
                raise InstanceError("cost table values must be non-negative")

    @classmethod
    def identity(cls) -> CostFunction:
        return cls("identity")

    @classmethod
    def linear(cls, coefficient: int) -> CostFunction:
        return cls("linear", coefficient=coefficient)

    @classmethod
    def table(cls, values: Iterable[int]) -> CostFunction:
        return cls("table", values=tuple(values))

    @property
    def is_linear(self) -> bool:
        return self.kind in ("identity", "linear")

    @property
    def slope(self) -> int:
        """Per-unit price; only meaningful for linear kinds."""
        if self.kind == "identity":
            return 1
        if self.kind == "linear":
            return self.coefficient
        raise InstanceError("table costs have no slope")

    def __call__(self, s: int) -> int:
        if s < 0:
            raise InstanceError(f"negative shift {s}")
        if self.kind == "identity":
            return s
        if self.kind == "linear":
            return self.coefficient * s
        if s >= len(self.values):
            raise InstanceError(f"shift {s} outside cost table domain 0..{len(self.values) - 1}")
        return self.values[s]


@dataclass(frozen=True)
class PreferenceProfile:
    rankings: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rankings", tuple(tuple(r) for r in self.rankings))

    @property
    def n(self) -> int:
        return len(self.rankings)

    def position(self, voter: int, candidate: int) -> int:
        """1-indexed rank of ``candidate`` in the voter's ballot."""
        return self.rankings[voter].index(candidate) + 1

    def tops(self) -> list[int]:
        return [r[0] for r in self.rankings]


@dataclass(frozen=True)
class InfluenceNetwork:
    """Directed network; an arc ``(j, i, w)`` lets voter j push voter i."""

    n: int
    arcs: tuple[tuple[int, int, Fraction], ...] = ()

    def __post_init__(self):
        arcs = tuple((int(j), int(i), Fraction(w)) for j, i, w in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        seen = set()
        for j, i, w in arcs:
            if not (0 <= j < self.n and 0 <= i < self.n):
                raise InstanceError(f"arc ({j}, {i}) references a voter outside 0..{self.n - 1}")
            if j == i:
                raise InstanceError(f"self-arc on voter {j}")
            if (j, i) in seen:
                raise InstanceError(f"duplicate arc ({j}, {i})")
            if w < 0:
                raise InstanceError(f"negative weight on arc ({j}, {i})")
            seen.add((j, i))

    @classmethod
    def undirected(cls, n: int, edges: Iterable[tuple[int, int]], weight=1) -> InfluenceNetwork:
        arcs = []
        for u, v in edges:
            arcs.append((u, v, weight))
            arcs.append((v, u, weight))
        return cls(n, tuple(arcs))

    @cached_property
    def weights(self) -> dict[tuple[int, int], Fraction]:
        return {(j, i): w for j, i, w in self.arcs}

    @cached_property
    def in_arcs(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        incoming: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.n)]
        for j, i, w in self.arcs:
            incoming[i].append((j, w))
        return tuple(tuple(a) for a in incoming)

    @cached_property
    def out_neighbors(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.n)]
        for j, i, _ in self.arcs:
            out[j].add(i)
        return tuple(frozenset(o) for o in out)

    @cached_property
    def is_symmetric_unit(self) -> bool:
        """True when the network is an undirected graph with all weights 1."""
        w = self.weights
        return all(x == 1 and w.get((i, j)) == 1 for (j, i), x in w.items())

    def undirected_edges(self) -> list[tuple[int, int]]:
        """Edges of the underlying undirected support, each as (small, large)."""
        return sorted({(min(j, i), max(j, i)) for j, i, _ in self.arcs})


@dataclass(frozen=True)
class Instance:
    """A Shift Bribery over Social Network instance.

    ``threshold`` switches to supporter-count mode: the preferred candidate
    wins iff it tops at least that many ballots, regardless of ``rule``.
    """

    num_candidates: int
    preferred: int
    profile: PreferenceProfile
    network: InfluenceNetwork
    costs: tuple[CostFunction, ...]
    budget: int
    rule: str = MAJORITY
    tiebreak: tuple[int, ...] | None = None
    threshold: int | None = None
    metadata: dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        m = self.num_candidates
        if not isinstance(self.profile, PreferenceProfile):
            object.__setattr__(self, "profile", PreferenceProfile(self.profile))
        object.__setattr__(self, "costs", tuple(self.costs))
        if self.tiebreak is None:
            object.__setattr__(self, "tiebreak", tuple(range(m)))
        else:
            object.__setattr__(self, "tiebreak", tuple(self.tiebreak))

        if m < 2:
            raise InstanceError("need at least two candidates")
        if not 0 <= self.preferred < m:
            raise InstanceError(f"preferred candidate {self.preferred} outside 0..{m - 1}")
        n = self.profile.n
        if n < 1:
            raise InstanceError("need at least one voter")
        if self.network.n != n or len(self.costs) != n:
            raise InstanceError(
                f"voter count mismatch: profile {n}, network {self.network.n}, costs {len(self.costs)}"
            )
        for i, r in enumerate(self.profile.rankings):
            if sorted(r) != list(range(m)):
                raise InstanceError(f"ranking of voter {i} is not a permutation of 0..{m - 1}")
        for i, pi in enumerate(self.costs):
            if pi.kind == "table" and len(pi.values) != m:
                raise InstanceError(f"cost table of voter {i} must have {m} entries")
        if self.budget < 0:
            raise InstanceError("budget must be non-negative")
        if self.rule not in RULES:
            raise InstanceError(f"unknown rule {self.rule!r}")
        if sorted(self.tiebreak) != list(range(m)):
            raise InstanceError("tiebreak must order every candidate exactly once")
        if self.threshold is not None and self.threshold < 0:
            raise InstanceError("threshold must be non-negative")

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def m(self) -> int:
        return self.num_candidates

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """1-indexed rank of the preferred candidate for every voter."""
        return tuple(self.profile.position(i, self.preferred) for i in range(self.n))

    @cached_property
    def supporters(self) -> frozenset[int]:
        return frozenset(i for i, p in enumerate(self.positions) if p == 1)

    def replace(self, **changes) -> Instance:
        from dataclasses import replace

        return replace(self, **changes)


@dataclass
class SolveOutcome:
    feasible: bool
    optimal_cost: int | None = None
    witness: tuple[int, ...] | None = None
    algorithm: str = ""
    stats: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.witness is not None:
            self.witness = tuple(self.witness)
        present = (self.witness is not None, self.optimal_cost is not None)
        if present != (self.feasible, self.feasible):
            raise ValueError("feasible, witness and optimal_cost must be present together")

    @classmethod
    def infeasible(cls, algorithm: str, **stats) -> SolveOutcome:
        return cls(False, algorithm=algorithm, stats=stats)


def majority_target(n: int) -> int:
    """Ballots needed for a strict majority, i.e. ceil((n + 1) / 2)."""
    return n // 2 + 1


def support_target(instance: Instance) -> int:
    """Ballots the preferred candidate must top in supporter-count mode."""
    if instance.threshold is not None:
        return instance.threshold
    return majority_target(instance.n)


def check_shift_vector(instance: Instance, s: Sequence[int]) -> None:
    if len(s) != instance.n:
        raise InstanceError(f"shift vector has {len(s)} entries, instance has {instance.n} voters")
    for i, x in enumerate(s):
        if not 0 <= x <= instance.m - 1:
            raise InstanceError(f"shift s[{i}] = {x} outside 0..{instance.m - 1}")


def effective_shifts(instance: Instance, s: Sequence[int]) -> list[int]:
    """Direct shift plus floor(s_j * w(j, i)) summed over in-neighbours j."""
    check_shift_vector(instance, s)
    out = list(s)
    for i, incoming in enumerate(instance.network.in_arcs):
        for j, w in incoming:
            if s[j]:
                out[i] += (s[j] * w.numerator) // w.denominator
    return out


def _shift_up(ranking: tuple[int, ...], candidate: int, amount: int) -> tuple[int, ...]:
    pos = ranking.index(candidate)
    amount = min(amount, pos)
    if amount == 0:
        return ranking
    r = list(ranking)
    del r[pos]
    r.insert(pos - amount, candidate)
    return tuple(r)


def apply_shift(instance: Instance, s: Sequence[int]) -> PreferenceProfile:
    eff = effective_shifts(instance, s)
    c = instance.preferred
    return PreferenceProfile(
        tuple(_shift_up(r, c, e) for r, e in zip(instance.profile.rankings, eff))
    )


def winner(profile: PreferenceProfile, rule: str, tiebreak: Sequence[int], m: int | None = None) -> int:
    """Winning candidate, or ``NO_MAJORITY`` under majority without a strict majority.

    Majority is read as "tops a strict majority of ballots", which for two
    candidates is the usual majority rule.
    """
    if m is None:
        m = len(tiebreak)
    counts = [0] * m
    for r in profile.rankings:
        counts[r[0]] += 1
    if rule == MAJORITY:
        need = majority_target(profile.n)
        for cand, k in enumerate(counts):
            if k >= need:
                return cand
        return NO_MAJORITY
    if rule == PLURALITY:
        best = max(counts)
        for cand in tiebreak:
            if counts[cand] == best:
                return cand
    raise InstanceError(f"unknown rule {rule!r}")


def shift_cost(instance: Instance, s: Sequence[int]) -> int:
    check_shift_vector(instance, s)
    return sum(pi(x) for pi, x in zip(instance.costs, s))


def preferred_wins(instance: Instance, profile: PreferenceProfile) -> bool:
    if instance.threshold is not None:
        tops = sum(1 for r in profile.rankings if r[0] == instance.preferred)
        return tops >= instance.threshold
    return winner(profile, instance.rule, instance.tiebreak, instance.m) == instance.preferred


def verify(instance: Instance, s: Sequence[int]) -> bool:
    """Within budget and the preferred candidate wins after propagation."""
    if shift_cost(instance, s) > instance.budget:
        return False
    return preferred_wins(instance, apply_shift(instance, s))


def outcome_from_witness(instance: Instance, witness: Sequence[int], algorithm: str, **stats) -> SolveOutcome:
    witness = tuple(witness)
    return SolveOutcome(True, shift_cost(instance, witness), witness, algorithm, stats)
