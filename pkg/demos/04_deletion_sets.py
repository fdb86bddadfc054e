# %% [markdown]
# # Branching over small deletion sets
#
# When removing a few voters leaves a forest or a cluster graph, we branch over
# which of those voters to bribe and solve the rest with a dynamic program.

# %%
import networkx as nx

from shiftbribery import brute_force_min_cost, find_deletion_set, solve_via_cvd, solve_via_fvs
from shiftbribery.fpt import CVD, FVS, fvs_branches
from shiftbribery.generate import generate_instance
from shiftbribery.graphs import support_graph

inst = generate_instance("fvs", 9, seed=5, budget=3)
deletion = find_deletion_set(support_graph(inst.network), FVS)
print("feedback vertex set:", sorted(deletion.vertices))

# %% [markdown]
# Every subset of the deletion set is one branch. Each branch reports the
# cheapest completion that keeps exactly that subset bribed.

# %%
for br in fvs_branches(inst, deletion):
    print(sorted(br.subset), br.cost)
out = solve_via_fvs(inst)
print("best:", out.optimal_cost, "oracle:", brute_force_min_cost(inst).optimal_cost)

# %% [markdown]
# The cluster-deletion variant handles cliques joined through a few hub voters.

# %%
cvd = generate_instance("cvd", 10, seed=2, cost="linear", budget=4)
print(sorted(find_deletion_set(support_graph(cvd.network), CVD).vertices))
print(solve_via_cvd(cvd).optimal_cost, brute_force_min_cost(cvd).optimal_cost)

# %% [markdown]
# ## Few affected voters
#
# With unit costs, winning means picking at most b voters whose closed
# neighbourhoods cover enough non-supporters: a partial dominating set.

# %%
from shiftbribery import solve_via_partial_domination
from shiftbribery.fpt import min_partial_dominator

stars = nx.disjoint_union(nx.star_graph(4), nx.star_graph(4))
print(min_partial_dominator(stars, set(stars.nodes), 8, 3))
gen = generate_instance("general", 10, seed=6, budget=3)
print(solve_via_partial_domination(gen).stats)
