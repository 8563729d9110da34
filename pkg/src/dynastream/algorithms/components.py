"""Connected-component count maintained incrementally as the graph evolves."""

from __future__ import annotations

from collections import deque
from itertools import count as _counter

from ..events import EdgeAdded, EdgeRemoved, GraphEvent, NodeAdded, NodeRemoved
from ..graph import DynamicGraph
from ..pipeline import Filter, Sink


class TrackerOutOfSync(RuntimeError):
    pass


def count_components(graph: DynamicGraph) -> int:
    """Batch breadth-first recount, for reference."""
    seen: set[str] = set()
    total = 0
    for start in graph.node_ids():
        if start in seen:
            continue
        total += 1
        seen.add(start)
        queue = deque([start])
        while queue:
            for nb in graph.iter_neighbors(queue.popleft()):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
    return total


class ComponentTracker(Filter):
    """Tracks the number of connected components (edges taken as undirected).

    Place it downstream of the graph it watches: every event it receives must
    already be applied to that graph, which is what :class:`DynamicGraph`
    guarantees for the events it forwards.

    Additions merge labels, smaller component into larger. A removed edge
    triggers a search from both endpoints, advanced alternately, that stops as
    soon as the two searches meet (still connected) or one of them runs out
    (split off, and that side gets a fresh label). Work is thus bounded by
    the smaller side.
    """

    def __init__(self, graph: DynamicGraph, downstream: Sink | None = None):
        super().__init__(downstream)
        self.graph = graph
        self._ids = _counter()
        self.label: dict[str, int] = {}
        self.members: dict[int, set[str]] = {}
        self._edges: dict[str, tuple[str, str]] = {
            eid: graph.endpoints(eid) for eid in graph.edge_ids()
        }
        for start in graph.node_ids():
            if start not in self.label:
                self._relabel(self._reach(start))

    @property
    def count(self) -> int:
        return len(self.members)

    def send(self, event: GraphEvent) -> None:
        self.apply(event)
        self.emit(event)

    def apply(self, event: GraphEvent) -> int:
        match event:
            case NodeAdded(node_id=nid):
                if nid in self.label:
                    raise TrackerOutOfSync(f"node {nid!r} added twice")
                self._relabel({nid})
            case NodeRemoved(node_id=nid):
                cid = self._label(nid)
                if len(self.members[cid]) != 1:
                    raise TrackerOutOfSync(f"node {nid!r} removed while still connected")
                del self.members[cid]
                del self.label[nid]
            case EdgeAdded(edge_id=eid, src_id=u, dst_id=v):
                self._edges[eid] = (u, v)
                self._union(self._label(u), self._label(v))
            case EdgeRemoved(edge_id=eid):
                try:
                    u, v = self._edges.pop(eid)
                except KeyError:
                    raise TrackerOutOfSync(f"unknown edge {eid!r}") from None
                if u != v:
                    self._split(u, v)
        return self.count

    def _label(self, nid):
        try:
            return self.label[nid]
        except KeyError:
            raise TrackerOutOfSync(f"unknown node {nid!r}") from None

    def _relabel(self, nodes: set[str]) -> None:
        cid = next(self._ids)
        for n in nodes:
            self.label[n] = cid
        self.members[cid] = nodes

    def _union(self, a: int, b: int) -> None:
        if a == b:
            return
        if len(self.members[a]) < len(self.members[b]):
            a, b = b, a
        moved = self.members.pop(b)
        for n in moved:
            self.label[n] = a
        self.members[a] |= moved

    def _reach(self, start: str) -> set[str]:
        seen = {start}
        queue = deque([start])
        while queue:
            for nb in self.graph.iter_neighbors(queue.popleft()):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return seen

    def _split(self, u: str, v: str) -> None:
        graph = self.graph
        seen = ({u}, {v})
        queues = (deque([u]), deque([v]))
        side = 0
        while True:
            mine, other = seen[side], seen[1 - side]
            queue = queues[side]
            if not queue:
                break
            for nb in graph.iter_neighbors(queue.popleft()):
                if nb in other:
                    return
                if nb not in mine:
                    mine.add(nb)
                    queue.append(nb)
            side = 1 - side
        # seen[side] is a whole component cut off from the other endpoint
        part = seen[side]
        old = self.members[self.label[u]]
        old -= part
        self._relabel(part)
