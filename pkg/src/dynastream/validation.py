"""Liveness checks shared by :func:`validate_stream` and the graph store."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Protocol

from .events import (
    EdgeAdded,
    EdgeAttrChanged,
    EdgeRemoved,
    GraphAttrChanged,
    GraphEvent,
    NodeAdded,
    NodeAttrChanged,
    NodeRemoved,
    StepBegins,
)


@dataclass(frozen=True)
class Policy:
    auto_create: bool = True
    strict: bool = False
    allow_self_loops: bool = False
    allow_multi_edges: bool = False


@dataclass(frozen=True)
class Violation:
    index: int
    event: GraphEvent
    reason: str

    def __str__(self) -> str:
        return f"event #{self.index} {self.event!r}: {self.reason}"


class LiveState(Protocol):
    now: float

    def has_node(self, node_id: str) -> bool: ...
    def has_edge(self, edge_id: str) -> bool: ...
    def has_pair(self, u: str, v: str) -> bool: ...


def check_event(state: LiveState, event: GraphEvent, policy: Policy) -> list[str]:
    """Return every reason ``event`` cannot be applied to ``state``."""
    problems: list[str] = []
    match event:
        case NodeAdded(node_id=nid):
            if state.has_node(nid):
                problems.append(f"node {nid!r} already exists")
        case NodeRemoved(node_id=nid):
            if not state.has_node(nid):
                problems.append(f"node {nid!r} does not exist")
        case EdgeAdded(edge_id=eid, src_id=u, dst_id=v):
            if state.has_edge(eid):
                problems.append(f"edge {eid!r} already exists")
            if not policy.auto_create:
                for nid in dict.fromkeys((u, v)):
                    if not state.has_node(nid):
                        problems.append(f"endpoint {nid!r} does not exist")
            if u == v and not policy.allow_self_loops:
                problems.append(f"self-loop on {u!r} not allowed")
            elif not policy.allow_multi_edges and state.has_pair(u, v):
                problems.append(f"an edge between {u!r} and {v!r} already exists")
        case EdgeRemoved(edge_id=eid):
            if not state.has_edge(eid):
                problems.append(f"edge {eid!r} does not exist")
        case NodeAttrChanged(node_id=nid):
            if not state.has_node(nid):
                problems.append(f"node {nid!r} does not exist")
        case EdgeAttrChanged(edge_id=eid):
            if not state.has_edge(eid):
                problems.append(f"edge {eid!r} does not exist")
        case StepBegins(time=t):
            if t < state.now:
                problems.append(f"step time {t:g} is before current time {state.now:g}")
        case GraphAttrChanged():
            pass
        case _:
            raise TypeError(f"not a graph event: {event!r}")
    return problems


class _Liveness:
    """Alive-id bookkeeping without attributes; O(alive ids) memory."""

    def __init__(self) -> None:
        self.now = 0.0
        self.nodes: dict[str, set[str]] = {}
        self.edges: dict[str, tuple[str, str]] = {}
        self.pairs: dict[frozenset, int] = {}

    def has_node(self, node_id):
        return node_id in self.nodes

    def has_edge(self, edge_id):
        return edge_id in self.edges

    def has_pair(self, u, v):
        return self.pairs.get(frozenset((u, v)), 0) > 0

    def _drop_edge(self, eid):
        u, v = self.edges.pop(eid)
        self.nodes[u].discard(eid)
        self.nodes[v].discard(eid)
        key = frozenset((u, v))
        self.pairs[key] -= 1
        if not self.pairs[key]:
            del self.pairs[key]

    def apply(self, event: GraphEvent) -> None:
        match event:
            case NodeAdded(node_id=nid):
                self.nodes[nid] = set()
            case NodeRemoved(node_id=nid):
                for eid in list(self.nodes[nid]):
                    self._drop_edge(eid)
                del self.nodes[nid]
            case EdgeAdded(edge_id=eid, src_id=u, dst_id=v):
                self.nodes.setdefault(u, set()).add(eid)
                self.nodes.setdefault(v, set()).add(eid)
                self.edges[eid] = (u, v)
                key = frozenset((u, v))
                self.pairs[key] = self.pairs.get(key, 0) + 1
            case EdgeRemoved(edge_id=eid):
                self._drop_edge(eid)
            case StepBegins(time=t):
                self.now = t


def validate_stream(
    events: Iterable[GraphEvent],
    auto_create: bool = True,
    *,
    allow_self_loops: bool = False,
    allow_multi_edges: bool = False,
) -> list[Violation]:
    """Check a stream against liveness rules; an empty list means the stream is valid.

    Violating events are reported and otherwise ignored, exactly as a
    non-strict graph would skip them.
    """
    policy = Policy(
        auto_create=auto_create,
        allow_self_loops=allow_self_loops,
        allow_multi_edges=allow_multi_edges,
    )
    state = _Liveness()
    violations: list[Violation] = []
    for i, event in enumerate(events):
        problems = check_event(state, event, policy)
        if problems:
            violations.extend(Violation(i, event, r) for r in problems)
        else:
            state.apply(event)
    return violations
