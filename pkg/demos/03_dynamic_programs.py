# %% [markdown]
# # Dynamic programs: clusters, paths and bounded treewidth

# %%
import networkx as nx

from shiftbribery import brute_force_min_cost, solve_cluster_dp, solve_path_dp, solve_treewidth_dp
from shiftbribery.decomposition import build_tree_decomposition, make_nice
from shiftbribery.generate import generate_instance

# %% [markdown]
# ## Cluster graphs
#
# In a clique one bribe converts every member, so each clique is a knapsack
# item: its price is the cheapest member, its gain is the number of
# non-supporters it holds.

# %%
from shiftbribery.dp import clique_summaries

cl = generate_instance("cluster", 10, seed=4, cost="linear", budget=5)
for s in clique_summaries(cl):
    print(s)
out = solve_cluster_dp(cl)
print(out.feasible, out.optimal_cost, out.witness)

# %% [markdown]
# ## Directed paths, any number of candidates
#
# Influence flows one way along the path. The DP sweeps from the far end and
# tracks how much shift arrives at each voter.

# %%
path = generate_instance("path", 7, seed=2, m=3, cost="linear", budget=5)
print(solve_path_dp(path).optimal_cost, brute_force_min_cost(path).optimal_cost)

# %% [markdown]
# ## Bounded treewidth
#
# A heuristic decomposition is turned into a nice one. The DP runs over bag
# states, and its state count stays under 4^(w+1) * (kappa+1) * nodes.

# %%
g = nx.cycle_graph(8)
g.add_edges_from([(0, 4), (2, 6)])
dec = build_tree_decomposition(g)
nice = make_nice(dec, g)
print("width", dec.width, "nice nodes", len(nice))

tw = generate_instance("treewidth", 14, seed=1, width=2, budget=4)
out = solve_treewidth_dp(tw)
print(out.feasible, out.optimal_cost)
print({k: out.stats[k] for k in ("width", "kappa", "states", "state_bound")})
