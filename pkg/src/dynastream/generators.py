"""Classic graph families as event streams.

Every generator returns ``StepBegins(0)`` followed by node then edge
additions. Node ids are ``n<i>`` and edge ids ``e<i>_<j>`` with ``i < j``.
Randomness comes from :class:`~dynastream.rng.SplitMix64`, so a given spec
always yields the same stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .events import EdgeAdded, GraphEvent, NodeAdded, StepBegins
from .rng import SplitMix64

FAMILIES = ("grid", "torus", "random", "preferential")


def _stream(n_nodes: int, pairs) -> list[GraphEvent]:
    events: list[GraphEvent] = [StepBegins(0)]
    events.extend(NodeAdded(f"n{i}") for i in range(n_nodes))
    events.extend(EdgeAdded(f"e{i}_{j}", f"n{i}", f"n{j}") for i, j in pairs)
    return events


def _check_dims(rows, cols):
    if rows < 1 or cols < 1:
        raise ValueError(f"rows and cols must be >= 1, got {rows}x{cols}")


def grid(rows: int, cols: int) -> list[GraphEvent]:
    """Rows x cols lattice with 4-neighbour edges; node ``n<r*cols+c>``."""
    _check_dims(rows, cols)
    pairs = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                pairs.append((i, i + 1))
            if r + 1 < rows:
                pairs.append((i, i + cols))
    return _stream(rows * cols, pairs)


def torus(rows: int, cols: int) -> list[GraphEvent]:
    """Grid with wrap-around edges. Wraps that would duplicate an existing
    edge or form a self-loop (rows or cols below 3) are dropped."""
    _check_dims(rows, cols)
    pairs: dict[tuple[int, int], None] = {}
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            for j in (r * cols + (c + 1) % cols, ((r + 1) % rows) * cols + c):
                if i != j:
                    pairs.setdefault((min(i, j), max(i, j)))
    return _stream(rows * cols, pairs)


def random_graph(n: int, p: float, seed: int = 0) -> list[GraphEvent]:
    """Erdős–Rényi G(n, p); pairs are visited in (i, j) lexicographic order,
    one uniform draw each."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = SplitMix64(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return _stream(n, pairs)


def preferential(n: int, k: int, seed: int = 0) -> list[GraphEvent]:
    """Preferential attachment seeded by a k-clique.

    Each later node picks ``k`` distinct targets one at a time, each draw
    weighted by current degree among the not-yet-picked nodes (uniform if all
    remaining weights are zero, which only happens for ``k = 1``).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < k:
        raise ValueError(f"n must be >= k, got n={n}, k={k}")
    rng = SplitMix64(seed)
    events: list[GraphEvent] = [StepBegins(0)]
    degree = [0] * n
    for i in range(k):
        events.append(NodeAdded(f"n{i}"))
    for i in range(k):
        for j in range(i + 1, k):
            events.append(EdgeAdded(f"e{i}_{j}", f"n{i}", f"n{j}"))
            degree[i] += 1
            degree[j] += 1
    for new in range(k, n):
        candidates = list(range(new))
        targets = []
        for _ in range(k):
            total = sum(degree[c] for c in candidates)
            if total == 0:
                pick = rng.randbelow(len(candidates))
            else:
                r = rng.randbelow(total)
                pick = 0
                while r >= degree[candidates[pick]]:
                    r -= degree[candidates[pick]]
                    pick += 1
            targets.append(candidates.pop(pick))
        events.append(NodeAdded(f"n{new}"))
        for t in sorted(targets):
            events.append(EdgeAdded(f"e{t}_{new}", f"n{t}", f"n{new}"))
            degree[t] += 1
            degree[new] += 1
    return events


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0


def generate(spec: GeneratorSpec) -> list[GraphEvent]:
    p = spec.params
    if spec.family == "grid":
        return grid(p["rows"], p["cols"])
    if spec.family == "torus":
        return torus(p["rows"], p["cols"])
    if spec.family == "random":
        return random_graph(p["n"], p["p"], spec.seed)
    if spec.family == "preferential":
        return preferential(p["n"], p["k"], spec.seed)
    raise ValueError(f"unknown family {spec.family!r}; expected one of {FAMILIES}")
