# %% [markdown]
# # Complete networks and transitive tournaments
#
# On a complete unit-weight network every voter feels the sum of all direct
# shifts. So the only thing that matters is the total shift alpha, and the win
# predicate is monotone in alpha.

# %%
from shiftbribery import PLURALITY, brute_force_min_cost, solve_complete_majority, solve_complete_plurality
from shiftbribery.generate import generate_instance
from shiftbribery.poly import minimal_winning_shift, wins_at_uniform_shift

inst = generate_instance("complete", 6, seed=3, m=3, cost="linear", budget=5)
print("positions of the preferred candidate:", inst.positions)
print("wins at alpha = 0, 1, 2:", [wins_at_uniform_shift(inst, a) for a in range(inst.m)])
print("smallest winning alpha:", minimal_winning_shift(inst))

# %% [markdown]
# The solver puts all of alpha on the voter with the cheapest slope.

# %%
out = solve_complete_majority(inst)
print(out.optimal_cost, out.witness, out.stats)
print("oracle agrees:", brute_force_min_cost(inst).optimal_cost == out.optimal_cost)

# %% [markdown]
# Plurality works the same way, with ties broken by a fixed candidate order.

# %%
plu = generate_instance("complete", 6, seed=8, m=4, cost="linear", rule=PLURALITY, budget=5)
print(solve_complete_plurality(plu).stats, brute_force_min_cost(plu).optimal_cost)

# %% [markdown]
# In a transitive tournament the top voter reaches everyone. One bribe there
# converts the whole electorate, so the optimum is always 0 or 1.

# %%
from shiftbribery import solve_transitive_tournament

for seed in range(5):
    t = generate_instance("tournament", 12, seed, supporter_frac=0.3)
    out = solve_transitive_tournament(t)
    print(f"seed {seed}: {len(t.supporters)} supporters -> cost {out.optimal_cost}")
