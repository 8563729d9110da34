import random

from hypothesis import given, settings
from hypothesis import strategies as st

from dynastream import DynamicGraph, GraphViolation, validate_stream
from dynastream.events import (
    EdgeAdded,
    EdgeAttrChanged,
    EdgeRemoved,
    NodeAdded,
    NodeAttrChanged,
    NodeRemoved,
    StepBegins,
)

from helpers import random_stream


def test_duplicate_node():
    v = validate_stream([NodeAdded("A"), NodeAdded("A")])
    assert len(v) == 1 and v[0].index == 1 and "already exists" in v[0].reason


def test_five_date_is_valid_without_auto_create(five_date):
    assert validate_stream(five_date, auto_create=False) == []


def test_missing_endpoints():
    v = validate_stream([EdgeAdded("e", "A", "B")], auto_create=False)
    assert len(v) == 2
    assert validate_stream([EdgeAdded("e", "A", "B")], auto_create=True) == []


def test_each_violation_kind():
    events = [
        NodeRemoved("x"),
        EdgeRemoved("y"),
        NodeAdded("a"),
        NodeAdded("b"),
        EdgeAdded("e", "a", "b"),
        EdgeAdded("e", "b", "a"),
        StepBegins(5),
        StepBegins(4),
        NodeAttrChanged("zz", "k", 1.0),
        EdgeAttrChanged("ee", "k", 1.0),
        EdgeAdded("f", "a", "a"),
    ]
    v = validate_stream(events, auto_create=False)
    assert [x.index for x in v] == [0, 1, 5, 5, 7, 8, 9, 10]


def test_policy_flags():
    loop = [NodeAdded("a"), EdgeAdded("e", "a", "a")]
    assert validate_stream(loop, allow_self_loops=True) == []
    multi = [EdgeAdded("e", "a", "b"), EdgeAdded("f", "b", "a")]
    assert len(validate_stream(multi)) == 1
    assert validate_stream(multi, allow_multi_edges=True) == []


def test_node_removal_frees_edges():
    events = [EdgeAdded("e", "a", "b"), NodeRemoved("a"), EdgeRemoved("e")]
    assert len(validate_stream(events)) == 1


def _corrupt(events, rng):
    events = list(events)
    for _ in range(rng.randrange(1, 4)):
        i = rng.randrange(len(events) + 1)
        events.insert(i, rng.choice([NodeAdded("n1"), NodeRemoved("n2"), EdgeRemoved("e3"), StepBegins(0)]))
    return events


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.booleans())
def test_strict_replay_iff_valid(seed, corrupt):
    rng = random.Random(seed)
    events = random_stream(rng, rng.randrange(1, 120))
    if corrupt:
        events = _corrupt(events, rng)
    ok = validate_stream(events) == []
    g = DynamicGraph(strict=True)
    try:
        g.replay(events)
        replayed = True
    except GraphViolation:
        replayed = False
    assert ok == replayed
