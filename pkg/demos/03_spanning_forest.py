"""
Token spanning forest on a static graph
=======================================

Every node starts as its own tree holding a token. Tokens wander along tree
edges and merge across graph edges, so the number of trees drops until one
tree covers each connected component.
"""

# %%
import numpy as np

from dynastream import DynamicGraph, random_graph
from dynastream.algorithms import SpanningForest, count_components, tree_metrics

g = DynamicGraph().replay(random_graph(40, 0.08, seed=5))
forest = SpanningForest(g, seed=1)
print("components:", count_components(g), "tokens:", forest.token_count)

# %%
history = []
while not forest.is_spanning():
    forest.step()
    history.append(forest.token_count)
print("rounds:", len(history))
print("tokens per round:", history)

# %%
m = tree_metrics(forest)
for size in sorted(m.size_histogram):
    print(f"size {size:2d}: {m.size_histogram[size]} tree(s), "
          f"diameter {m.avg_diameter_by_size[size]:.1f}, inner degree {m.avg_inner_degree_by_size[size]:.2f}")

# %%
# Convergence time over many seeds on the same graph.
rounds = []
for seed in range(40):
    f = SpanningForest(g, seed=seed)
    n = 0
    while not f.is_spanning():
        f.step()
        n += 1
    rounds.append(n)
rounds = np.array(rounds)
print("mean", rounds.mean(), "std", rounds.std().round(1), "max", rounds.max())

# %%
# Cutting a tree edge hands a fresh token to the side left without one.
g.downstream = forest
edge = sorted(forest.tree_edges)[0]
before = forest.token_count
g.remove_edge(edge)
print(before, "->", forest.token_count, "invariants:", forest.check_invariants() or "ok")
