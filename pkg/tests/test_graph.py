import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynastream import Collector, DynamicGraph, GraphViolation, Policy
from dynastream.events import (
    EdgeAdded,
    EdgeRemoved,
    GraphAttrChanged,
    NodeAdded,
    NodeAttrChanged,
    NodeRemoved,
    StepBegins,
)

from helpers import FIVE_DATE_GROUPS, random_stream


def test_five_date_replay(five_date):
    g = DynamicGraph().replay(five_date)
    assert sorted(g.node_ids()) == ["v1", "v2", "v3", "v4", "v5", "v6"]
    pairs = {frozenset(g.endpoints(e)) for e in g.edge_ids()}
    assert pairs == {frozenset(p) for p in [("v3", "v4"), ("v5", "v6"), ("v4", "v6"), ("v2", "v4")]}
    assert g.now == 5
    assert g.degree("v4") == 3
    assert g.degree("v1") == 0


def test_five_date_snapshots_per_date():
    # node sets of each snapshot, from the listed events
    expected = {
        0: {"v1", "v2"},
        1: {"v1", "v2", "v3", "v4"},
        2: {"v1", "v3", "v4"},
        4: {"v1", "v2", "v3", "v4", "v5"},
        5: {"v1", "v2", "v3", "v4", "v5", "v6"},
    }
    g = DynamicGraph()
    for date, group in FIVE_DATE_GROUPS:
        g.step(date)
        g.replay(group)
        assert set(g.node_ids()) == expected[date]
    assert not g.check_integrity()


def test_node_removal_cascade_is_forwarded(five_date):
    sink = Collector()
    g = DynamicGraph(downstream=sink)
    g.replay(five_date[: five_date.index(NodeRemoved("v2")) + 1])
    tail = sink.events[-2:]
    assert tail == [EdgeRemoved("e12"), NodeRemoved("v2")]
    assert not g.has_edge("e12")


def test_add_remove_node():
    g = DynamicGraph()
    g.add_node("A")
    g.remove_node("A")
    assert g.node_count == 0 and g.edge_count == 0


def test_auto_create_synthesises_nodes():
    sink = Collector()
    g = DynamicGraph(downstream=sink)
    g.apply_event(EdgeAdded("e", "A", "B"))
    assert (g.node_count, g.edge_count) == (2, 1)
    assert sink.events == [NodeAdded("A"), NodeAdded("B"), EdgeAdded("e", "A", "B")]


def test_triangle_triangle():
    g = DynamicGraph(strict=True)
    g.add_edge("AB", "A", "B")
    g.add_edge("BC", "B", "C")
    g.add_edge("CA", "C", "A")
    assert (g.node_count, g.edge_count) == (3, 3)
    assert all(g.degree(n) == 2 for n in "ABC")
    assert g.neighbors("A") == {"B", "C"}


def test_strict_errors():
    g = DynamicGraph(strict=True)
    g.add_edge("e", "A", "B")
    with pytest.raises(GraphViolation, match="already exists"):
        g.add_edge("e", "A", "C")
    with pytest.raises(GraphViolation, match="self-loop"):
        g.add_edge("f", "A", "A")
    with pytest.raises(GraphViolation):
        DynamicGraph(strict=True, auto_create=False).add_edge("e", "A", "B")


def test_non_strict_skips_and_counts():
    g = DynamicGraph()
    g.add_node("A")
    assert g.add_node("A") is False
    g.remove_edge("nope")
    assert g.skipped == 2 and g.node_count == 1


def test_self_loops_and_multi_edges_when_allowed():
    g = DynamicGraph(Policy(allow_self_loops=True, allow_multi_edges=True))
    g.add_edge("loop", "A", "A")
    g.add_edge("p1", "A", "B")
    g.add_edge("p2", "B", "A", directed=True)
    assert g.degree("A") == 4
    assert g.neighbors("A") == {"A", "B"}
    assert g.edge("p2").directed


def test_isolated_node_and_unknown_ids():
    g = DynamicGraph()
    g.add_node("x")
    assert g.degree("x") == 0 and g.neighbors("x") == set()
    with pytest.raises(KeyError):
        g.degree("y")
    with pytest.raises(KeyError):
        g.edge("y")


def test_attributes_and_snapshot_immutability():
    g = DynamicGraph()
    g.add_node("a", color="red")
    g.add_edge("e", "a", "b", weight=2)
    g.apply_event(GraphAttrChanged("title", "t"))
    snap = g.snapshot()
    g.apply_event(NodeAttrChanged("a", "color"))
    g.apply_event(NodeAttrChanged("a", "size", 3))
    g.remove_node("b")
    g.step(7)
    assert dict(snap.nodes["a"]) == {"color": "red"}
    assert snap.edges["e"].attrs["weight"] == 2.0
    assert snap.attrs == {"title": "t"}
    assert snap.now == 0
    assert dict(g.node_attrs("a")) == {"size": 3.0}
    with pytest.raises(TypeError):
        snap.nodes["a"]["color"] = "blue"


def test_time_is_non_decreasing():
    g = DynamicGraph()
    g.step(3)
    assert g.step(2) is False
    assert g.now == 3
    with pytest.raises(GraphViolation):
        DynamicGraph(strict=True).replay([StepBegins(3), StepBegins(1)])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_filter_fidelity_and_integrity(seed):
    events = random_stream(random.Random(seed), 200)
    sink = Collector()
    first = DynamicGraph(downstream=sink)
    for e in events:
        first.apply_event(e)
        assert not first.check_integrity()
    second = DynamicGraph().replay(sink.events)
    assert first.snapshot() == second.snapshot()
    assert second.skipped == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_cascade_soundness(seed):
    events = random_stream(random.Random(seed), 200, attributes=False)
    sink = Collector()
    g = DynamicGraph(downstream=sink)
    for e in events:
        if isinstance(e, NodeRemoved):
            incident = set(g.incident_edges(e.node_id))
            start = len(sink.events)
            g.apply_event(e)
            emitted = sink.events[start:]
            assert emitted[-1] == e
            assert {x.edge_id for x in emitted[:-1]} == incident
            assert all(isinstance(x, EdgeRemoved) for x in emitted[:-1])
            assert all(e.node_id not in g.endpoints(eid) for eid in g.edge_ids())
        else:
            g.apply_event(e)
