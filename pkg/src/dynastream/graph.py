"""In-memory dynamic graph: a sink that applies events and a filter that
re-emits them (with cascades made explicit) to its downstream."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .events import (
    AttributeValue,
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
from .pipeline import Filter, Sink, StreamAborted
from .validation import Policy, check_event


class GraphViolation(StreamAborted):
    """A strict graph refused an event."""

    def __init__(self, event: GraphEvent, reasons: list[str]):
        self.event = event
        self.reasons = reasons
        super().__init__(f"{event!r}: {'; '.join(reasons)}")


@dataclass(frozen=True)
class Edge:
    id: str
    src_id: str
    dst_id: str
    directed: bool
    attrs: Mapping[str, AttributeValue]

    def other(self, node_id: str) -> str:
        return self.dst_id if node_id == self.src_id else self.src_id


@dataclass(frozen=True)
class GraphSnapshot:
    nodes: Mapping[str, Mapping[str, AttributeValue]]
    edges: Mapping[str, Edge]
    attrs: Mapping[str, AttributeValue]
    now: float


class _EdgeRecord:
    __slots__ = ("id", "src_id", "dst_id", "directed", "attrs")

    def __init__(self, id, src_id, dst_id, directed, attrs):
        self.id = id
        self.src_id = src_id
        self.dst_id = dst_id
        self.directed = directed
        self.attrs = attrs


class DynamicGraph(Filter):
    """Current state of a dynamic graph.

    ``policy`` controls how invalid events are handled: with ``strict`` a
    :class:`GraphViolation` is raised, otherwise the event is skipped and
    counted in :attr:`skipped`.

    Applied events are forwarded downstream. Two kinds of derived events are
    forwarded as well: ``NodeAdded`` for endpoints auto-created by an
    ``EdgeAdded`` (before it), and ``EdgeRemoved`` for each edge incident to a
    removed node (before the ``NodeRemoved``). Each forwarded event has already
    been applied when the downstream sees it.
    """

    def __init__(self, policy: Policy | None = None, downstream: Sink | None = None, **flags):
        super().__init__(downstream)
        if policy is None:
            policy = Policy(**flags)
        elif flags:
            raise TypeError("pass either a Policy or keyword flags, not both")
        self.policy = policy
        self.now = 0.0
        self.attrs: dict[str, AttributeValue] = {}
        self._nodes: dict[str, dict[str, AttributeValue]] = {}
        # node id -> {edge id: None}, insertion ordered
        self._incident: dict[str, dict[str, None]] = {}
        self._edges: dict[str, _EdgeRecord] = {}
        self._pairs: dict[frozenset, int] = {}
        self.skipped = 0
        self.applied = 0

    # liveness protocol
    def has_node(self, node_id: str) -> bool:
        return node_id in self._nodes

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edges

    def has_pair(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._pairs

    def send(self, event: GraphEvent) -> None:
        self.apply_event(event)

    def apply_event(self, event: GraphEvent) -> bool:
        """Apply one event; return False if it was skipped."""
        problems = check_event(self, event, self.policy)
        if problems:
            if self.policy.strict:
                raise GraphViolation(event, problems)
            self.skipped += 1
            return False
        self.applied += 1
        match event:
            case NodeAdded(node_id=nid, attrs=attrs):
                self._add_node(nid, dict(attrs))
                self.emit(event)
            case NodeRemoved(node_id=nid):
                for eid in list(self._incident[nid]):
                    self._remove_edge(eid)
                    self.emit(EdgeRemoved(eid))
                del self._nodes[nid]
                del self._incident[nid]
                self.emit(event)
            case EdgeAdded(edge_id=eid, src_id=u, dst_id=v, directed=directed, attrs=attrs):
                for nid in dict.fromkeys((u, v)):
                    if nid not in self._nodes:
                        self._add_node(nid, {})
                        self.emit(NodeAdded(nid))
                self._edges[eid] = _EdgeRecord(eid, u, v, directed, dict(attrs))
                self._incident[u][eid] = None
                self._incident[v][eid] = None
                key = frozenset((u, v))
                self._pairs[key] = self._pairs.get(key, 0) + 1
                self.emit(event)
            case EdgeRemoved(edge_id=eid):
                self._remove_edge(eid)
                self.emit(event)
            case NodeAttrChanged(node_id=nid, key=key, value=value):
                _set(self._nodes[nid], key, value)
                self.emit(event)
            case EdgeAttrChanged(edge_id=eid, key=key, value=value):
                _set(self._edges[eid].attrs, key, value)
                self.emit(event)
            case GraphAttrChanged(key=key, value=value):
                _set(self.attrs, key, value)
                self.emit(event)
            case StepBegins(time=t):
                self.now = t
                self.emit(event)
        return True

    def replay(self, events: Iterable[GraphEvent]) -> "DynamicGraph":
        for event in events:
            self.apply_event(event)
        return self

    def _add_node(self, nid, attrs):
        self._nodes[nid] = attrs
        self._incident[nid] = {}

    def _remove_edge(self, eid):
        rec = self._edges.pop(eid)
        del self._incident[rec.src_id][eid]
        self._incident[rec.dst_id].pop(eid, None)
        key = frozenset((rec.src_id, rec.dst_id))
        self._pairs[key] -= 1
        if not self._pairs[key]:
            del self._pairs[key]

    # convenience mutators, all routed through apply_event
    def add_node(self, node_id: str, **attrs) -> bool:
        return self.apply_event(NodeAdded(node_id, attrs))

    def remove_node(self, node_id: str) -> bool:
        return self.apply_event(NodeRemoved(node_id))

    def add_edge(self, edge_id: str, src_id: str, dst_id: str, directed: bool = False, **attrs) -> bool:
        return self.apply_event(EdgeAdded(edge_id, src_id, dst_id, directed, attrs))

    def remove_edge(self, edge_id: str) -> bool:
        return self.apply_event(EdgeRemoved(edge_id))

    def set_node_attr(self, node_id: str, key: str, value=None) -> bool:
        return self.apply_event(NodeAttrChanged(node_id, key, value))

    def set_edge_attr(self, edge_id: str, key: str, value=None) -> bool:
        return self.apply_event(EdgeAttrChanged(edge_id, key, value))

    def step(self, time: float) -> bool:
        return self.apply_event(StepBegins(time))

    # queries
    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def node_ids(self) -> list[str]:
        return list(self._nodes)

    def edge_ids(self) -> list[str]:
        return list(self._edges)

    def node_attrs(self, node_id: str) -> Mapping[str, AttributeValue]:
        return MappingProxyType(self._node(node_id))

    def edge(self, edge_id: str) -> Edge:
        try:
            rec = self._edges[edge_id]
        except KeyError:
            raise KeyError(f"unknown edge {edge_id!r}") from None
        return Edge(rec.id, rec.src_id, rec.dst_id, rec.directed, MappingProxyType(rec.attrs))

    def endpoints(self, edge_id: str) -> tuple[str, str]:
        rec = self._edges[edge_id]
        return rec.src_id, rec.dst_id

    def incident_edges(self, node_id: str) -> list[str]:
        self._node(node_id)
        return list(self._incident[node_id])

    def degree(self, node_id: str) -> int:
        self._node(node_id)
        return sum(
            2 if self._edges[eid].src_id == self._edges[eid].dst_id else 1
            for eid in self._incident[node_id]
        )

    def neighbors(self, node_id: str) -> set[str]:
        """Adjacent node ids, ignoring edge direction."""
        self._node(node_id)
        out = set()
        for eid in self._incident[node_id]:
            rec = self._edges[eid]
            out.add(rec.dst_id if rec.src_id == node_id else rec.src_id)
        return out

    def iter_neighbors(self, node_id: str) -> Iterator[str]:
        edges = self._edges
        for eid in self._incident[node_id]:
            rec = edges[eid]
            yield rec.dst_id if rec.src_id == node_id else rec.src_id

    def _node(self, node_id):
        try:
            return self._nodes[node_id]
        except KeyError:
            raise KeyError(f"unknown node {node_id!r}") from None

    def snapshot(self) -> GraphSnapshot:
        nodes = {nid: MappingProxyType(dict(a)) for nid, a in self._nodes.items()}
        edges = {
            eid: Edge(r.id, r.src_id, r.dst_id, r.directed, MappingProxyType(dict(r.attrs)))
            for eid, r in self._edges.items()
        }
        return GraphSnapshot(
            MappingProxyType(nodes),
            MappingProxyType(edges),
            MappingProxyType(dict(self.attrs)),
            self.now,
        )

    def check_integrity(self) -> list[str]:
        """Full scan of referential integrity; returns problems found."""
        problems = []
        for eid, rec in self._edges.items():
            for nid in (rec.src_id, rec.dst_id):
                if nid not in self._nodes:
                    problems.append(f"edge {eid!r} references missing node {nid!r}")
                elif eid not in self._incident[nid]:
                    problems.append(f"edge {eid!r} missing from incidence of {nid!r}")
        for nid, inc in self._incident.items():
            for eid in inc:
                if eid not in self._edges:
                    problems.append(f"node {nid!r} lists dead edge {eid!r}")
        return problems

    def __repr__(self) -> str:
        return f"DynamicGraph(nodes={self.node_count}, edges={self.edge_count}, now={self.now:g})"


def _set(attrs: dict, key: str, value) -> None:
    if value is None:
        attrs.pop(key, None)
    else:
        attrs[key] = value
