"""Measurements on the trees of a spanning forest, grouped by tree size."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Mapping, Set


def _farthest(adj: Mapping[str, Set[str]], start: str) -> tuple[str, int]:
    dist = {start: 0}
    far, best = start, 0
    queue = deque([start])
    while queue:
        node = queue.popleft()
        d = dist[node]
        if d > best or (d == best and node < far):
            far, best = node, d
        for nb in adj[node]:
            if nb not in dist:
                dist[nb] = d + 1
                queue.append(nb)
    return far, best


def tree_diameter(adj: Mapping[str, Set[str]], start: str) -> int:
    """Hop diameter of the tree containing ``start`` by a double BFS sweep.

    Exact on trees only: the farthest node from any vertex is an end of some
    longest path.
    """
    end, _ = _farthest(adj, start)
    _, diameter = _farthest(adj, end)
    return diameter


@dataclass
class TreeMetrics:
    size_histogram: dict[int, int] = field(default_factory=dict)
    avg_diameter_by_size: dict[int, float] = field(default_factory=dict)
    avg_inner_degree_by_size: dict[int, float] = field(default_factory=dict)

    @property
    def tree_count(self) -> int:
        return sum(self.size_histogram.values())

    def rows(self, step) -> list[tuple]:
        """CSV rows ``(step, tree_size, tree_count, avg_diameter, avg_inner_degree)``."""
        return [
            (
                step,
                size,
                self.size_histogram[size],
                self.avg_diameter_by_size[size],
                self.avg_inner_degree_by_size[size],
            )
            for size in sorted(self.size_histogram)
        ]


def metrics_of_trees(adj: Mapping[str, Set[str]], trees) -> TreeMetrics:
    """Aggregate metrics over ``trees`` (iterables of node ids) using ``adj``.

    Inner nodes are those of tree degree >= 2; their degrees are pooled over
    all trees of a size class before averaging. A class without inner nodes
    reports 0.
    """
    hist: dict[int, int] = defaultdict(int)
    diam_sum: dict[int, int] = defaultdict(int)
    inner_deg_sum: dict[int, int] = defaultdict(int)
    inner_count: dict[int, int] = defaultdict(int)
    for tree in trees:
        tree = list(tree)
        size = len(tree)
        hist[size] += 1
        diam_sum[size] += tree_diameter(adj, tree[0])
        for node in tree:
            deg = len(adj[node])
            if deg >= 2:
                inner_deg_sum[size] += deg
                inner_count[size] += 1
    out = TreeMetrics()
    for size in sorted(hist):
        out.size_histogram[size] = hist[size]
        out.avg_diameter_by_size[size] = diam_sum[size] / hist[size]
        out.avg_inner_degree_by_size[size] = (
            inner_deg_sum[size] / inner_count[size] if inner_count[size] else 0.0
        )
    return out


def tree_metrics(forest) -> TreeMetrics:
    return metrics_of_trees(forest.tree_adj, forest.trees())


CSV_HEADER = ("step", "tree_size", "tree_count", "avg_diameter", "avg_inner_degree")
