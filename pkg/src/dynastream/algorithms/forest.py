"""Token-based spanning forest on a dynamic graph.

Each tree of the forest owns exactly one token (its root). Four local rules
keep the forest spanning as edges come and go:

1. a tree edge disappears and this endpoint's half has no token: it creates one;
2. a tree edge disappears and this endpoint's half keeps the token: it only
   forgets the edge;
3. two token holders joined by a graph edge merge their trees over that edge,
   one token disappears;
4. each token moves to a random tree neighbour of its holder, or stays.

Rules 1 and 2 react to edge removals as they arrive. Rules 4 then 3 form one
synchronous round, :meth:`SpanningForest.step`.
"""

from __future__ import annotations

from collections import deque

from ..events import EdgeAdded, EdgeRemoved, GraphEvent, NodeAdded, NodeRemoved
from ..graph import DynamicGraph
from ..pipeline import Filter, Sink
from ..rng import SplitMix64
from .components import count_components


class ForestError(RuntimeError):
    pass


class SpanningForest(Filter):
    """Forest state attached to ``graph``; place it downstream of the graph.

    On attachment every alive node gets a token and no edge is in the tree,
    so trees grow only through rule 3 merges.
    """

    def __init__(self, graph: DynamicGraph, seed: int = 0, downstream: Sink | None = None):
        super().__init__(downstream)
        self.graph = graph
        self.rng = SplitMix64(seed)
        self.tokens: set[str] = set(graph.node_ids())
        self.tree_adj: dict[str, set[str]] = {nid: set() for nid in graph.node_ids()}
        self.edges: dict[str, tuple[str, str]] = {eid: graph.endpoints(eid) for eid in graph.edge_ids()}
        self.tree_edges: set[str] = set()
        self.rounds = 0

    # ------------------------------------------------------------ events
    def send(self, event: GraphEvent) -> None:
        match event:
            case NodeAdded(node_id=nid):
                self.tree_adj[nid] = set()
                self.tokens.add(nid)
            case NodeRemoved(node_id=nid):
                # incident edges were removed first, so nid is a lone tree
                if self.tree_adj.pop(nid, None):
                    raise ForestError(f"node {nid!r} removed with tree edges attached")
                self.tokens.discard(nid)
            case EdgeAdded(edge_id=eid, src_id=u, dst_id=v):
                self.on_edge_added(eid, u, v)
            case EdgeRemoved(edge_id=eid):
                self.on_edge_removed(eid)
        self.emit(event)

    def on_edge_added(self, edge_id: str, u: str, v: str) -> None:
        if u not in self.tree_adj or v not in self.tree_adj:
            raise ForestError(f"edge {edge_id!r} has unknown endpoints")
        self.edges[edge_id] = (u, v)

    def on_edge_removed(self, edge_id: str) -> None:
        try:
            u, v = self.edges.pop(edge_id)
        except KeyError:
            raise ForestError(f"unknown edge {edge_id!r}") from None
        if edge_id not in self.tree_edges:
            return
        self.tree_edges.discard(edge_id)
        self.tree_adj[u].discard(v)
        self.tree_adj[v].discard(u)
        # rule 1 for the tokenless half, rule 2 (nothing more) for the other
        self.tokens.add(self._tokenless_endpoint(u, v))

    def _tokenless_endpoint(self, u: str, v: str) -> str:
        """Search both halves alternately; the first half found to hold a
        token, or to be exhausted without one, decides."""
        ends = (u, v)
        seen = ({u}, {v})
        queues = (deque([u]), deque([v]))
        side = 0
        while True:
            queue = queues[side]
            if not queue:
                return ends[side]
            node = queue.popleft()
            if node in self.tokens:
                return ends[1 - side]
            for nb in self.tree_adj[node]:
                if nb not in seen[side]:
                    seen[side].add(nb)
                    queue.append(nb)
            side = 1 - side

    # ------------------------------------------------------------ rounds
    def move_tokens(self) -> None:
        """Rule 4: every token picks uniformly among its holder's tree
        neighbours and the holder itself.

        The chance of staying breaks the parity lock of a plain walk: on a
        bipartite tree a token that always moves alternates colour every
        round, so two trees whose only joining edges link equal-phase
        colours would never meet. Lone nodes draw nothing.
        """
        moved = set()
        for holder in sorted(self.tokens):
            nbrs = self.tree_adj[holder]
            if nbrs:
                options = sorted(nbrs)
                pick = self.rng.randbelow(len(options) + 1)
                moved.add(options[pick] if pick < len(options) else holder)
            else:
                moved.add(holder)
        self.tokens = moved

    def merge_tokens(self) -> int:
        """Rule 3: scan candidate edges in id order; merge where both ends
        still hold a token. The larger node id gives up its token."""
        graph = self.graph
        tokens = self.tokens
        candidates = set()
        for holder in tokens:
            for eid in graph.incident_edges(holder):
                if eid in self.tree_edges:
                    continue
                u, v = self.edges[eid]
                if u != v and u in tokens and v in tokens:
                    candidates.add(eid)
        merges = 0
        for eid in sorted(candidates):
            u, v = self.edges[eid]
            if u in tokens and v in tokens:
                self.tree_edges.add(eid)
                self.tree_adj[u].add(v)
                self.tree_adj[v].add(u)
                tokens.discard(max(u, v))
                merges += 1
        return merges

    def step(self) -> int:
        """One synchronous round: rule 4 then rule 3. Returns merges made."""
        self.move_tokens()
        self.rounds += 1
        return self.merge_tokens()

    def run(self, rounds: int) -> int:
        return sum(self.step() for _ in range(rounds))

    # ------------------------------------------------------------ queries
    @property
    def token_count(self) -> int:
        return len(self.tokens)

    def trees(self) -> list[list[str]]:
        """Node sets of the trees, each sorted, ordered by smallest member."""
        seen: set[str] = set()
        out = []
        for start in sorted(self.tree_adj):
            if start in seen:
                continue
            seen.add(start)
            members = [start]
            queue = deque([start])
            while queue:
                for nb in self.tree_adj[queue.popleft()]:
                    if nb not in seen:
                        seen.add(nb)
                        members.append(nb)
                        queue.append(nb)
            out.append(sorted(members))
        return out

    def tree_count(self) -> int:
        return len(self.trees())

    def is_spanning(self) -> bool:
        """True when there is exactly one tree per connected component."""
        return self.tree_count() == count_components(self.graph)

    def check_invariants(self, tracker=None) -> list[str]:
        """Full consistency scan; returns human-readable violations.

        With a :class:`ComponentTracker`, also checks that no tree spans two
        graph components.
        """
        problems: list[str] = []
        g = self.graph
        alive = set(g.node_ids())
        if set(self.tree_adj) != alive:
            problems.append("forest nodes differ from graph nodes")
        if set(self.edges) != set(g.edge_ids()):
            problems.append("forest edge records differ from graph edges")
        if not self.tokens <= alive:
            problems.append(f"tokens on dead nodes: {sorted(self.tokens - alive)}")
        expected = {n: set() for n in self.tree_adj}
        parent = {n: n for n in self.tree_adj}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for eid in sorted(self.tree_edges):
            if eid not in self.edges:
                problems.append(f"tree edge {eid!r} is not alive")
                continue
            u, v = self.edges[eid]
            if u not in expected or v not in expected:
                problems.append(f"tree edge {eid!r} has unknown endpoints")
                continue
            expected[u].add(v)
            expected[v].add(u)
            ru, rv = find(u), find(v)
            if ru == rv:
                problems.append(f"tree edge {eid!r} closes a cycle")
            else:
                parent[ru] = rv
        if expected != self.tree_adj:
            problems.append("tree adjacency does not match tree edges")
        for tree in self.trees():
            held = [n for n in tree if n in self.tokens]
            if len(held) != 1:
                problems.append(f"tree of {tree[0]!r} (size {len(tree)}) holds {len(held)} tokens")
            if tracker is not None and len({tracker.label.get(n) for n in tree}) != 1:
                problems.append(f"tree of {tree[0]!r} spans several graph components")
        return problems
