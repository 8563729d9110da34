import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynastream import DynamicGraph, MobilityConfig, RandomWaypoint
from dynastream.algorithms import ComponentTracker, ForestError, SpanningForest, count_components
from dynastream.events import StepBegins
from dynastream.generators import random_graph

from helpers import random_stream


def _setup(seed=0, **flags):
    g = DynamicGraph(**flags)
    tr = ComponentTracker(g)
    f = SpanningForest(g, seed)
    g.downstream = tr
    tr.downstream = f
    return g, tr, f


def _tree(f, *edges):
    """Force the given edges into the forest; callers then set the tokens."""
    for eid in edges:
        u, v = f.edges[eid]
        f.tree_edges.add(eid)
        f.tree_adj[u].add(v)
        f.tree_adj[v].add(u)


def test_init_empty_and_small():
    assert SpanningForest(DynamicGraph()).token_count == 0
    g = DynamicGraph()
    for n in "abc":
        g.add_node(n)
    g.add_edge("ab", "a", "b")
    f = SpanningForest(g)
    assert f.token_count == 3 and not f.tree_edges
    assert f.tree_count() == g.node_count
    assert f.check_invariants() == []


def test_single_edge_merges_on_first_step():
    g, _, f = _setup()
    g.add_edge("AB", "A", "B")
    assert f.tokens == {"A", "B"} and not f.tree_edges  # not merged until a round
    f.step()
    assert f.tree_edges == {"AB"} and f.tokens == {"A"}


def test_one_node_step_is_noop():
    g, _, f = _setup()
    g.add_node("solo")
    before = f.rng.state
    f.step()
    assert f.tokens == {"solo"} and f.rng.state == before


def test_rule1_two_node_tree():
    g, _, f = _setup()
    g.add_edge("AB", "A", "B")
    _tree(f, "AB")
    f.tokens = {"A"}
    g.remove_edge("AB")
    assert f.tokens == {"A", "B"}
    assert f.tree_adj == {"A": set(), "B": set()}
    assert f.check_invariants() == []


def test_rule1_path_split():
    g, _, f = _setup()
    g.add_edge("AB", "A", "B")
    g.add_edge("BC", "B", "C")
    _tree(f, "AB", "BC")
    f.tokens = {"C"}
    g.remove_edge("AB")
    assert f.tokens == {"A", "C"}
    assert sorted(f.trees()) == [["A"], ["B", "C"]]
    assert f.check_invariants() == []


def test_rule1_token_far_side():
    g, _, f = _setup()
    g.add_edge("AB", "A", "B")
    g.add_edge("BC", "B", "C")
    _tree(f, "AB", "BC")
    f.tokens = {"A"}
    g.remove_edge("BC")
    assert f.tokens == {"A", "C"}


def test_non_tree_edge_removal():
    g, _, f = _setup()
    g.add_edge("AB", "A", "B")
    g.add_edge("BC", "B", "C")
    g.add_edge("CA", "C", "A")
    _tree(f, "AB", "BC")
    f.tokens = {"B"}
    g.remove_edge("CA")
    assert f.tokens == {"B"} and f.tree_edges == {"AB", "BC"}
    assert "CA" not in f.edges


def test_edge_added_inside_tree_stays_out():
    g, _, f = _setup()
    g.add_edge("AB", "A", "B")
    g.add_edge("BC", "B", "C")
    f.run(30)
    g.add_edge("CA", "C", "A")
    f.run(30)
    assert f.token_count == 1 and "CA" not in f.tree_edges


def test_add_then_remove_before_step():
    g, _, f = _setup()
    g.add_node("A")
    g.add_node("B")
    before = (set(f.tokens), set(f.tree_edges), {k: set(v) for k, v in f.tree_adj.items()})
    g.add_edge("AB", "A", "B")
    g.remove_edge("AB")
    assert (f.tokens, f.tree_edges, f.tree_adj) == before


def test_node_removal_via_cascade():
    g, tr, f = _setup()
    g.add_edge("AB", "A", "B")
    g.add_edge("BC", "B", "C")
    f.run(40)
    g.remove_node("B")
    assert f.check_invariants(tr) == []
    assert f.token_count == 2


def test_errors():
    g = DynamicGraph()
    f = SpanningForest(g)
    with pytest.raises(ForestError):
        f.on_edge_removed("nope")
    with pytest.raises(ForestError):
        f.on_edge_added("e", "x", "y")


def test_triangle_converges():
    g, _, f = _setup(seed=3)
    g.add_edge("AB", "A", "B")
    g.add_edge("BC", "B", "C")
    g.add_edge("CA", "C", "A")
    f.run(50)
    assert f.token_count == 1 and len(f.tree_edges) == 2
    assert f.trees() == [["A", "B", "C"]]


def test_static_random_graph_reaches_spanning_tree():
    seed = 0
    while True:
        g = DynamicGraph().replay(random_graph(10, 0.3, seed))
        if count_components(g) == 1:
            break
        seed += 1
    f = SpanningForest(g, 1)
    for _ in range(2000):
        f.step()
        if f.token_count == 1:
            break
    assert f.token_count == 1 and len(f.tree_edges) == 9 and f.is_spanning()


def _schedule(seed):
    rng = random.Random(seed)
    events = random_stream(rng, 250, attributes=False, directed=False, max_nodes=14)
    return [(e, rng.randrange(3)) for e in events]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_invariants_under_random_interleaving(seed):
    g, tr, f = _setup(seed)
    for event, rounds in _schedule(seed):
        g.apply_event(event)
        for _ in range(rounds):
            trees_before = f.tree_count()
            tokens_before = f.token_count
            edges_before = set(f.tree_edges)
            f.move_tokens()
            # rule 4 conserves tokens and tree edges
            assert f.token_count == tokens_before and f.tree_edges == edges_before
            f.merge_tokens()
            # rule 3 never increases the tree count
            assert f.tree_count() <= trees_before
        assert f.check_invariants(tr) == []
        assert f.token_count == f.tree_count()


def test_determinism():
    def run(seed):
        g, _, f = _setup(seed)
        for event, rounds in _schedule(123):
            g.apply_event(event)
            f.run(rounds)
        return sorted(f.tokens), sorted(f.tree_edges)

    assert run(5) == run(5)


def test_mobility_trace_invariants():
    cfg = MobilityConfig(n_stations=15, radius=250, n_ticks=40, seed=4)
    g, tr, f = _setup(seed=4)
    sim = RandomWaypoint(cfg)
    for event in sim.events():
        if isinstance(event, StepBegins) and event.time > 0:
            f.run(2)
            assert f.check_invariants(tr) == []
        g.apply_event(event)
