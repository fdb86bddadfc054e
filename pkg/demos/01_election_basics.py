# %% [markdown]
# # Elections, influence and the brute-force oracle
#
# A small election with two candidates. Candidate 1 is the one we want to win.
# Voters sit on a directed path where each voter pushes the one in front of it.

# %%
from fractions import Fraction

from shiftbribery import (
    CostFunction,
    InfluenceNetwork,
    Instance,
    apply_shift,
    brute_force_min_cost,
    effective_shifts,
    shift_cost,
    verify,
)

n = 3
election = Instance(
    num_candidates=2,
    preferred=1,
    profile=[(0, 1)] * n,
    network=InfluenceNetwork(n, ((2, 1, 1), (1, 0, 1))),
    costs=[CostFunction.identity()] * n,
    budget=1,
)
election.positions

# %% [markdown]
# Paying voter 2 to move candidate 1 up by one spot also moves voters 1 and 0,
# since every arc carries weight 1 and influence chains along the path.

# %%
s = (0, 0, 1)
print("effective shifts:", effective_shifts(election, s))
print("ballots after:", apply_shift(election, s).rankings)
print("cost:", shift_cost(election, s), "wins:", verify(election, s))

# %% [markdown]
# Fractional weights pass on only part of a shift. With weight 1/2, a direct
# shift of 1 floors to 0 at the next voter, so the chain breaks.

# %%
half = election.replace(network=InfluenceNetwork(n, ((2, 1, Fraction(1, 2)), (1, 0, Fraction(1, 2)))))
print("effective shifts:", effective_shifts(half, s), "wins:", verify(half, s))

# %% [markdown]
# The oracle enumerates every shift vector and returns the cheapest winning one,
# breaking cost ties lexicographically. Every other solver is checked against it.

# %%
for inst in (election, half, half.replace(budget=2)):
    out = brute_force_min_cost(inst)
    print(out.feasible, out.optimal_cost, out.witness)
