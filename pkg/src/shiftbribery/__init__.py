"""Shift bribery over social networks: exact solvers, oracles and reductions."""

__version__ = "0.1.0"

from .election import (
    MAJORITY,
    NO_MAJORITY,
    PLURALITY,
    CostFunction,
    InfluenceNetwork,
    Instance,
    InstanceError,
    PreconditionError,
    PreferenceProfile,
    SolveOutcome,
    apply_shift,
    effective_shifts,
    shift_cost,
    verify,
    winner,
)
from .oracle import brute_force_min_cost
from .poly import solve_complete_majority, solve_complete_plurality, solve_transitive_tournament
from .dp import solve_cluster_dp, solve_path_dp, solve_treewidth_dp
from .fpt import find_deletion_set, solve_via_cvd, solve_via_fvs, solve_via_partial_domination
