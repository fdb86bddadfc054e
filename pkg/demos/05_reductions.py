# %% [markdown]
# # Hardness constructions as instance generators
#
# Each reduction builds an election from a graph problem and carries a forward
# map that turns a source solution into a winning bribe.

# %%
import networkx as nx

from shiftbribery import brute_force_min_cost, verify
from shiftbribery.oracle import brute_force_dominating
from shiftbribery.reductions import (
    pad_ds_to_ktds,
    reduce_ds_to_sbon_complete,
    reduce_ds_to_sbon_general,
    reduce_ktds_to_sbon,
    reduce_setcover_to_sbon_bipartite,
)

# %% [markdown]
# Dominating set: the graph plus n-1 isolated voters, so a winning bribe must
# convert every original vertex.

# %%
star = nx.star_graph(3)
rec = reduce_ds_to_sbon_general(star, 1)
print(rec.instance.n, "voters; forward map of {0}:", rec.forward({0}), verify(rec.instance, rec.forward({0})))

for k in (2, 3):
    c7 = reduce_ds_to_sbon_general(nx.cycle_graph(7), k)
    print("C7, k =", k, brute_force_dominating(nx.cycle_graph(7), k) is not None, brute_force_min_cost(c7.instance).feasible)

# %% [markdown]
# The complete-network version hides the graph in weights: 1 on edges and
# 1/(2k) elsewhere. Padding voters cost k+1, more than the whole budget.

# %%
rec = reduce_ds_to_sbon_complete(nx.path_graph(3), 1)
print(rec.instance.network.weights[(0, 1)], rec.instance.network.weights[(0, 2)])
print(brute_force_min_cost(rec.instance).optimal_cost)

# %% [markdown]
# Set cover on a bipartite network. In the undirected form a filler voter
# touches every set voter, and one filler bribe converts them all. That makes
# this instance winnable although no two sets cover the universe. With arcs
# pointing from sets to elements and fillers, the equivalence holds.

# %%
sets = [{1}, {2}, {3}, {1}]
for directed in (False, True):
    rec = reduce_setcover_to_sbon_bipartite(3, sets, 2, directed=directed)
    print("directed" if directed else "undirected", rec.instance.n, rec.target,
          brute_force_min_cost(rec.instance).feasible)

# %% [markdown]
# (k,t)-dominating set maps to a threshold election on the same graph, and any
# dominating set instance can be padded into one.

# %%
rec = reduce_ktds_to_sbon(nx.path_graph(5), 1, 3)
print(rec.instance.threshold, brute_force_min_cost(rec.instance).feasible)
padded, k, t = pad_ds_to_ktds(nx.cycle_graph(4), 2)
print(padded.number_of_nodes(), k, t)
