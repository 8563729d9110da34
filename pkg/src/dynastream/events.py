"""Event vocabulary for dynamic graphs.

A dynamic graph is an ordered sequence of dated groups of changes. Each group
is encoded as a :class:`StepBegins` marker followed by atomic events, applied
in list order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Union

AttributeValue = Union[float, str, bool, tuple]
Attrs = Mapping[str, AttributeValue]

_ID_RE = re.compile(r'[^\s"]+')


def check_id(value: str, what: str = "identifier") -> str:
    if not isinstance(value, str) or not _ID_RE.fullmatch(value):
        raise ValueError(f"invalid {what} {value!r}: must be non-empty, without whitespace or '\"'")
    return value


def normalize_value(value) -> AttributeValue:
    """Coerce an attribute value to its canonical form.

    Integers become floats, lists become tuples; NaN and infinities are rejected.
    """
    if isinstance(value, bool) or isinstance(value, str):
        return value
    if isinstance(value, (int, float)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"attribute numbers must be finite, got {value}")
        return value
    if isinstance(value, (list, tuple)):
        return tuple(normalize_value(v) for v in value)
    raise TypeError(f"unsupported attribute value {value!r}")


def normalize_attrs(attrs: Attrs | None) -> dict[str, AttributeValue]:
    if not attrs:
        return {}
    return {check_id(k, "attribute key"): normalize_value(v) for k, v in attrs.items()}


def _check_time(time) -> float:
    time = float(time)
    if not math.isfinite(time) or time < 0:
        raise ValueError(f"timestamps must be finite and non-negative, got {time}")
    return time


@dataclass(frozen=True, slots=True)
class NodeAdded:
    node_id: str
    attrs: dict = field(default_factory=dict)

    def __post_init__(self):
        check_id(self.node_id, "node id")
        object.__setattr__(self, "attrs", normalize_attrs(self.attrs))


@dataclass(frozen=True, slots=True)
class NodeRemoved:
    node_id: str

    def __post_init__(self):
        check_id(self.node_id, "node id")


@dataclass(frozen=True, slots=True)
class EdgeAdded:
    edge_id: str
    src_id: str
    dst_id: str
    directed: bool = False
    attrs: dict = field(default_factory=dict)

    def __post_init__(self):
        check_id(self.edge_id, "edge id")
        check_id(self.src_id, "node id")
        check_id(self.dst_id, "node id")
        if self.edge_id in (self.src_id, self.dst_id):
            raise ValueError(f"edge id {self.edge_id!r} collides with one of its endpoint ids")
        object.__setattr__(self, "directed", bool(self.directed))
        object.__setattr__(self, "attrs", normalize_attrs(self.attrs))


@dataclass(frozen=True, slots=True)
class EdgeRemoved:
    edge_id: str

    def __post_init__(self):
        check_id(self.edge_id, "edge id")


@dataclass(frozen=True, slots=True)
class NodeAttrChanged:
    """Set ``key`` on a node; ``value=None`` removes the attribute."""

    node_id: str
    key: str
    value: AttributeValue | None = None

    def __post_init__(self):
        check_id(self.node_id, "node id")
        check_id(self.key, "attribute key")
        if self.value is not None:
            object.__setattr__(self, "value", normalize_value(self.value))


@dataclass(frozen=True, slots=True)
class EdgeAttrChanged:
    edge_id: str
    key: str
    value: AttributeValue | None = None

    def __post_init__(self):
        check_id(self.edge_id, "edge id")
        check_id(self.key, "attribute key")
        if self.value is not None:
            object.__setattr__(self, "value", normalize_value(self.value))


@dataclass(frozen=True, slots=True)
class GraphAttrChanged:
    key: str
    value: AttributeValue | None = None

    def __post_init__(self):
        check_id(self.key, "attribute key")
        if self.value is not None:
            object.__setattr__(self, "value", normalize_value(self.value))


@dataclass(frozen=True, slots=True)
class StepBegins:
    time: float

    def __post_init__(self):
        object.__setattr__(self, "time", _check_time(self.time))


GraphEvent = Union[
    NodeAdded,
    NodeRemoved,
    EdgeAdded,
    EdgeRemoved,
    NodeAttrChanged,
    EdgeAttrChanged,
    GraphAttrChanged,
    StepBegins,
]

EVENT_TYPES = (
    NodeAdded,
    NodeRemoved,
    EdgeAdded,
    EdgeRemoved,
    NodeAttrChanged,
    EdgeAttrChanged,
    GraphAttrChanged,
    StepBegins,
)


def steps(dated_groups) -> list[GraphEvent]:
    """Flatten ``[(date, [events...]), ...]`` into a single event list."""
    out: list[GraphEvent] = []
    for date, group in dated_groups:
        out.append(StepBegins(date))
        out.extend(group)
    return out
