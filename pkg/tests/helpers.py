"""Independent oracles and random stream builders used across the suite."""

from __future__ import annotations

import random
from collections import deque

from dynastream.events import (
    EdgeAdded,
    EdgeAttrChanged,
    EdgeRemoved,
    GraphAttrChanged,
    NodeAdded,
    NodeAttrChanged,
    NodeRemoved,
    StepBegins,
    steps,
)

FIVE_DATE_GROUPS = [
    (0, [NodeAdded("v1"), NodeAdded("v2"), EdgeAdded("e12", "v1", "v2")]),
    (1, [NodeAdded("v3"), NodeAdded("v4"), EdgeAdded("e13", "v1", "v3")]),
    (2, [NodeRemoved("v2"), EdgeAdded("e34", "v3", "v4")]),
    (4, [NodeAdded("v2"), NodeAdded("v5")]),
    (
        5,
        [
            NodeAdded("v6"),
            EdgeAdded("e56", "v5", "v6"),
            EdgeAdded("e46", "v4", "v6"),
            EdgeAdded("e24", "v2", "v4"),
            EdgeRemoved("e13"),
        ],
    ),
]


def five_date_events():
    return steps(FIVE_DATE_GROUPS)


def components_oracle(nodes, edge_pairs) -> int:
    """Plain BFS component count from node ids and endpoint pairs."""
    adj = {n: [] for n in nodes}
    for u, v in edge_pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    count = 0
    for s in adj:
        if s in seen:
            continue
        count += 1
        seen.add(s)
        q = deque([s])
        while q:
            for nb in adj[q.popleft()]:
                if nb not in seen:
                    seen.add(nb)
                    q.append(nb)
    return count


def snapshot_components(snap) -> int:
    return components_oracle(snap.nodes, [(e.src_id, e.dst_id) for e in snap.edges.values()])


def brute_diameter(adj) -> int:
    """Longest shortest path over all pairs, by BFS from every node."""
    best = 0
    for s in adj:
        dist = {s: 0}
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        best = max(best, max(dist.values()))
    return best


def random_tree(rng: random.Random, n: int) -> dict[str, set[str]]:
    """Random labelled tree: node i attaches to a uniform earlier node."""
    adj = {f"t{i}": set() for i in range(n)}
    for i in range(1, n):
        j = rng.randrange(i)
        adj[f"t{i}"].add(f"t{j}")
        adj[f"t{j}"].add(f"t{i}")
    return adj


_WEIRD = ["", "plain", 'quo"te', "back\\slash", "hash # sign", "new\nline", "tab\t", "ünïcødé", "{a,b}", "x=y"]


def random_value(rng: random.Random, depth: int = 0):
    kind = rng.randrange(5 if depth < 2 else 4)
    if kind == 0:
        return rng.choice([0.0, 1.0, -2.0, 2.5, 1e-300, 123456789.125, rng.uniform(-1e6, 1e6)])
    if kind == 1:
        return rng.choice(_WEIRD)
    if kind == 2:
        return rng.random() < 0.5
    if kind == 3:
        return float(rng.randrange(-1000, 1000))
    return tuple(random_value(rng, depth + 1) for _ in range(rng.randrange(4)))


def random_attrs(rng, max_keys=3):
    return {f"k{rng.randrange(6)}": random_value(rng) for _ in range(rng.randrange(max_keys + 1))}


def random_stream(
    rng: random.Random,
    n_events: int,
    *,
    max_nodes: int = 25,
    attributes: bool = True,
    directed: bool = True,
) -> list:
    """A valid stream (no violations under the default policy with
    auto_create=False) mixing every event kind."""
    events = [StepBegins(0)]
    now = 0.0
    nodes: list[str] = []
    edges: dict[str, tuple[str, str]] = {}
    pairs: set[frozenset] = set()
    counter = 0
    while len(events) < n_events:
        r = rng.random()
        if r < 0.25 or len(nodes) < 2:
            if len(nodes) >= max_nodes:
                continue
            counter += 1
            nid = f"n{counter}"
            nodes.append(nid)
            events.append(NodeAdded(nid, random_attrs(rng) if attributes else {}))
        elif r < 0.55:
            u, v = rng.sample(nodes, 2)
            if frozenset((u, v)) in pairs:
                continue
            counter += 1
            eid = f"e{counter}"
            edges[eid] = (u, v)
            pairs.add(frozenset((u, v)))
            is_directed = directed and rng.random() < 0.2
            events.append(EdgeAdded(eid, u, v, is_directed, random_attrs(rng) if attributes else {}))
        elif r < 0.72 and edges:
            eid = rng.choice(sorted(edges))
            pairs.discard(frozenset(edges.pop(eid)))
            events.append(EdgeRemoved(eid))
        elif r < 0.82:
            nid = rng.choice(nodes)
            nodes.remove(nid)
            for eid in [e for e, (u, v) in edges.items() if nid in (u, v)]:
                pairs.discard(frozenset(edges.pop(eid)))
            events.append(NodeRemoved(nid))
        elif r < 0.9:
            now += rng.choice([0.0, 1.0, 0.5, 3.0])
            events.append(StepBegins(now))
        elif attributes:
            choice = rng.randrange(3)
            value = None if rng.random() < 0.2 else random_value(rng)
            key = f"k{rng.randrange(6)}"
            if choice == 0:
                events.append(NodeAttrChanged(rng.choice(nodes), key, value))
            elif choice == 1 and edges:
                events.append(EdgeAttrChanged(rng.choice(sorted(edges)), key, value))
            else:
                events.append(GraphAttrChanged(key, value))
    return events


def forest_oracle(snap, tree_edges, tokens) -> list[str]:
    """Check a forest against a graph snapshot using only plain BFS.

    Tree edges must be alive and acyclic, every tree (tree-edge component,
    isolated nodes included) holds exactly one token, and no tree spans two
    graph components.
    """
    problems = []
    if not set(tree_edges) <= set(snap.edges):
        return ["tree edge not in graph"]
    pairs = [(snap.edges[e].src_id, snap.edges[e].dst_id) for e in tree_edges]
    n_trees = components_oracle(snap.nodes, pairs)
    if len(pairs) != len(snap.nodes) - n_trees:
        problems.append("tree edges contain a cycle")

    def labels(edge_pairs):
        adj = {n: [] for n in snap.nodes}
        for u, v in edge_pairs:
            adj[u].append(v)
            adj[v].append(u)
        lab = {}
        for s in adj:
            if s in lab:
                continue
            lab[s] = s
            q = deque([s])
            while q:
                for nb in adj[q.popleft()]:
                    if nb not in lab:
                        lab[nb] = s
                        q.append(nb)
        return lab

    tree_of = labels(pairs)
    comp_of = labels((e.src_id, e.dst_id) for e in snap.edges.values())
    held: dict[str, int] = {}
    for t in tokens:
        if t not in tree_of:
            problems.append(f"token on dead node {t}")
        else:
            held[tree_of[t]] = held.get(tree_of[t], 0) + 1
    roots = set(tree_of.values())
    if any(held.get(r, 0) != 1 for r in roots):
        problems.append("a tree does not hold exactly one token")
    spans = {}
    for n, r in tree_of.items():
        if spans.setdefault(r, comp_of[n]) != comp_of[n]:
            problems.append("a tree spans two components")
            break
    return problems
