"""Random-waypoint MANET simulation emitted as a graph event stream.

Each station is a node carrying ``x``/``y`` attributes; each pair of stations
within communication range (unit-disk model, ties connected) is an edge
``l<a>_<b>`` with ``a < b`` lexicographically.

Tick 0 places every station and links. Every later tick moves each station
``speed`` metres toward its waypoint (landing exactly on it when closer), then
draws a fresh uniform waypoint and speed on arrival, and emits position
changes followed by link removals and link additions, each sorted by id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .events import EdgeAdded, EdgeRemoved, GraphEvent, NodeAdded, NodeAttrChanged, StepBegins
from .rng import SplitMix64


@dataclass(frozen=True)
class MobilityConfig:
    n_stations: int = 30
    width: float = 1000.0
    height: float = 1000.0
    radius: float = 200.0
    v_min: float = 1.0
    v_max: float = 20.0
    n_ticks: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.n_stations < 1:
            raise ValueError("n_stations must be >= 1")
        if not (self.width > 0 and self.height > 0):
            raise ValueError("arena width and height must be > 0")
        if not self.radius > 0:
            raise ValueError("radius must be > 0")
        if not 0 <= self.v_min <= self.v_max:
            raise ValueError("need 0 <= v_min <= v_max")
        if self.n_ticks < 0:
            raise ValueError("n_ticks must be >= 0")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class Station:
    id: str
    x: float
    y: float
    wx: float
    wy: float
    speed: float


def link_id(a: str, b: str) -> str:
    a, b = min(a, b), max(a, b)
    return f"l{a}_{b}"


def proximity_pairs(stations: Iterable, radius: float) -> set[tuple[str, str]]:
    """Unordered station pairs (as sorted tuples) with distance <= radius.

    ``stations`` yields objects with ``id``, ``x``, ``y`` or ``(id, x, y)`` tuples.
    """
    pts = [s if isinstance(s, tuple) else (s.id, s.x, s.y) for s in stations]
    out = set()
    for i, (a, ax, ay) in enumerate(pts):
        for b, bx, by in pts[i + 1 :]:
            if math.hypot(ax - bx, ay - by) <= radius:
                out.add((a, b) if a < b else (b, a))
    return out


class RandomWaypoint:
    """Stateful simulator; iterate :meth:`events` or call :func:`mob_run`."""

    def __init__(self, cfg: MobilityConfig):
        self.cfg = cfg
        self.rng = SplitMix64(cfg.seed)
        self.tick = 0
        self.stations: list[Station] = []
        for i in range(cfg.n_stations):
            x, y = self._point()
            wx, wy = self._point()
            self.stations.append(Station(f"s{i}", x, y, wx, wy, self._speed()))
        self.links: set[tuple[str, str]] = set()

    def _point(self) -> tuple[float, float]:
        return self.rng.uniform(0.0, self.cfg.width), self.rng.uniform(0.0, self.cfg.height)

    def _speed(self) -> float:
        return self.rng.uniform(self.cfg.v_min, self.cfg.v_max)

    def _advance(self, s: Station) -> bool:
        dx, dy = s.wx - s.x, s.wy - s.y
        dist = math.hypot(dx, dy)
        old = (s.x, s.y)
        if dist <= s.speed:
            s.x, s.y = s.wx, s.wy
            s.wx, s.wy = self._point()
            s.speed = self._speed()
        else:
            f = s.speed / dist
            s.x = min(max(s.x + dx * f, 0.0), self.cfg.width)
            s.y = min(max(s.y + dy * f, 0.0), self.cfg.height)
        return (s.x, s.y) != old

    def _link_events(self) -> list[GraphEvent]:
        now = proximity_pairs(self.stations, self.cfg.radius)
        gone = sorted(link_id(a, b) for a, b in self.links - now)
        new = sorted((link_id(a, b), a, b) for a, b in now - self.links)
        self.links = now
        return [EdgeRemoved(eid) for eid in gone] + [EdgeAdded(eid, a, b) for eid, a, b in new]

    def start(self) -> list[GraphEvent]:
        events: list[GraphEvent] = [StepBegins(0)]
        events.extend(NodeAdded(s.id, {"x": s.x, "y": s.y}) for s in self.stations)
        events.extend(self._link_events())
        return events

    def advance(self) -> list[GraphEvent]:
        self.tick += 1
        events: list[GraphEvent] = [StepBegins(self.tick)]
        for s in self.stations:
            if self._advance(s):
                events.append(NodeAttrChanged(s.id, "x", s.x))
                events.append(NodeAttrChanged(s.id, "y", s.y))
        events.extend(self._link_events())
        return events

    def events(self) -> Iterator[GraphEvent]:
        if self.cfg.n_ticks == 0:
            return
        yield from self.start()
        for _ in range(self.cfg.n_ticks - 1):
            yield from self.advance()


def mob_run(cfg: MobilityConfig) -> list[GraphEvent]:
    """Full event stream: ``n_ticks`` step groups, ticks ``0 .. n_ticks - 1``."""
    return list(RandomWaypoint(cfg).events())
