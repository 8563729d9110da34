"""
Generators and tracked components
=================================

Build some standard graphs, then keep a component count up to date while
edges come and go, without recounting.
"""

# %%
import numpy as np

from dynastream import DynamicGraph, grid, preferential, random_graph, torus
from dynastream.algorithms import ComponentTracker, count_components

for name, events in [("grid 4x5", grid(4, 5)), ("torus 4x5", torus(4, 5)),
                     ("G(50, 0.05)", random_graph(50, 0.05, seed=1)),
                     ("preferential(200, 2)", preferential(200, 2, seed=1))]:
    g = DynamicGraph().replay(events)
    print(f"{name:22s} nodes={g.node_count:4d} edges={g.edge_count:4d} components={count_components(g)}")

# %%
# Degree distribution of the preferential graph: a few large hubs.
g = DynamicGraph().replay(preferential(2000, 2, seed=3))
deg = np.array([g.degree(v) for v in g.node_ids()])
print("mean", deg.mean(), "max", deg.max(), "median", np.median(deg))
print(np.bincount(deg)[:12])

# %%
# The tracker listens to the graph's output.
g = DynamicGraph()
tracker = ComponentTracker(g)
g.downstream = tracker
g.replay(grid(6, 6))
print("grid:", tracker.count)

# cut the grid along column 2/3
for r in range(6):
    g.remove_edge(f"e{r * 6 + 2}_{r * 6 + 3}")
print("after cut:", tracker.count)
g.add_edge("bridge", "n0", "n35")
print("with bridge:", tracker.count)

# %%
# Removing the two neighbours of corner n5 leaves it on its own.
g.remove_node("n4")
g.remove_node("n11")
print(tracker.count, "==", count_components(g))
print(sorted(len(m) for m in tracker.members.values()))
