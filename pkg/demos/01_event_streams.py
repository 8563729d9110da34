"""
Graphs as event streams
=======================

A dynamic graph is a list of events grouped by step. Here a short five-date
trace goes through a pipeline, into a graph, and out to DGS text.
"""

# %%
from dynastream import (
    CountingSink,
    DropAttributes,
    DynamicGraph,
    EdgeAdded,
    EdgeRemoved,
    NodeAdded,
    NodeRemoved,
    Tee,
    parse_dgs,
    pipe,
    steps,
    validate_stream,
    write_dgs,
)

trace = steps([
    (0, [NodeAdded("v1"), NodeAdded("v2"), EdgeAdded("e12", "v1", "v2")]),
    (1, [NodeAdded("v3"), NodeAdded("v4"), EdgeAdded("e13", "v1", "v3")]),
    (2, [NodeRemoved("v2"), EdgeAdded("e34", "v3", "v4")]),
    (4, [NodeAdded("v2"), NodeAdded("v5")]),
    (5, [NodeAdded("v6", {"colour": "red"}), EdgeAdded("e56", "v5", "v6"),
         EdgeAdded("e46", "v4", "v6"), EdgeAdded("e24", "v2", "v4"), EdgeRemoved("e13")]),
])
print(len(trace), "events, violations:", validate_stream(trace, auto_create=False))

# %%
# The graph is itself a filter: it forwards what it applied, including the
# edge removals implied by removing v2.
counter = CountingSink()
g = DynamicGraph(downstream=counter)
pipe(trace, [DropAttributes()], g)
print(g.node_count, "nodes,", g.edge_count, "edges at step", g.now)
print(dict(counter.by_type))

# %%
# Tee copies the stream to several sinks.
a, b = DynamicGraph(), CountingSink()
pipe(trace, [], Tee(a, b))
print(sorted(a.neighbors("v4")), b.total)

# %%
text = write_dgs(trace, "five_dates")
print(text.decode())
assert parse_dgs(text) == ("five_dates", trace)

# %%
# Bad events are skipped and counted unless strict mode is on.
lenient = DynamicGraph()
lenient.replay([NodeAdded("x"), NodeAdded("x"), EdgeRemoved("nope")])
print("skipped:", lenient.skipped)
