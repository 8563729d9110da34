"""
Spanning forest over a mobile ad hoc network
============================================

Stations move with a random-waypoint model and link when within range. The
forest runs a few rounds per tick; we record tree counts and sizes over time
and save an SVG of the last tick.
"""

# %%
import os
import tempfile

import numpy as np

from dynastream import DynamicGraph, MobilityConfig, RandomWaypoint
from dynastream.algorithms import ComponentTracker, SpanningForest, tree_metrics
from dynastream.render import RenderSpec, render_svg

cfg = MobilityConfig(n_stations=30, radius=220, v_min=2, v_max=25, n_ticks=200, seed=8)
g = DynamicGraph(strict=True, auto_create=False)
tracker = ComponentTracker(g)
forest = SpanningForest(g, seed=8)
g.downstream = tracker
tracker.downstream = forest

sim = RandomWaypoint(cfg)
groups = [sim.start()] + [sim.advance() for _ in range(cfg.n_ticks - 1)]

# %%
series = []
for tick, group in enumerate(groups):
    g.replay(group)
    forest.run(3)
    assert not forest.check_invariants(tracker)
    m = tree_metrics(forest)
    largest = max(m.size_histogram)
    series.append((tick, g.edge_count, tracker.count, forest.tree_count(), largest))

series = np.array(series)
print("tick  edges  components  trees  largest")
for row in series[::20]:
    print("%4d  %5d  %10d  %5d  %7d" % tuple(row))

# %%
# How often the forest is exactly one tree per component.
gap = series[:, 3] - series[:, 2]
print("ticks with extra trees:", int((gap > 0).sum()), "of", len(gap), "max gap", gap.max())

# %%
out = os.path.join(tempfile.gettempdir(), "manet_forest.svg")
with open(out, "w") as fh:
    fh.write(render_svg(g, RenderSpec(width=500, height=500), forest))
print("wrote", out)
