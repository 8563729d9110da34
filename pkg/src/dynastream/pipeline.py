"""Source -> filter -> sink plumbing.

Sources are plain iterables of events. Sinks are anything with a ``send(event)``
method. Filters are sinks that also forward to a ``downstream`` sink.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import replace
from typing import Callable, Iterable, Protocol, Sequence

from .events import (
    EdgeAdded,
    EdgeAttrChanged,
    GraphAttrChanged,
    GraphEvent,
    NodeAdded,
    NodeAttrChanged,
)


class Sink(Protocol):
    def send(self, event: GraphEvent) -> None: ...


class StreamAborted(Exception):
    """Raised by a stage to stop a pipe; carries a diagnostic message."""


class Filter:
    """Pass-through filter. Subclasses override :meth:`send` and call :meth:`emit`."""

    downstream: Sink | None = None

    def __init__(self, downstream: Sink | None = None) -> None:
        self.downstream = downstream

    def send(self, event: GraphEvent) -> None:
        self.emit(event)

    def emit(self, event: GraphEvent) -> None:
        if self.downstream is not None:
            self.downstream.send(event)


class Collector:
    """Sink that keeps every event it receives."""

    def __init__(self) -> None:
        self.events: list[GraphEvent] = []

    def send(self, event: GraphEvent) -> None:
        self.events.append(event)

    def __iter__(self):
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)


class CountingSink:
    """Sink that only counts events by type; constant memory."""

    def __init__(self) -> None:
        self.total = 0
        self.by_type: Counter[str] = Counter()

    def send(self, event: GraphEvent) -> None:
        self.total += 1
        self.by_type[type(event).__name__] += 1


class DropAttributes(Filter):
    """Strips every attribute: attribute-change events are dropped and
    node/edge additions are forwarded with empty attribute maps."""

    def send(self, event: GraphEvent) -> None:
        if isinstance(event, (NodeAttrChanged, EdgeAttrChanged, GraphAttrChanged)):
            return
        if isinstance(event, (NodeAdded, EdgeAdded)) and event.attrs:
            event = replace(event, attrs={})
        self.emit(event)


class Select(Filter):
    """Forwards only events for which ``predicate(event)`` is true."""

    def __init__(self, predicate: Callable[[GraphEvent], bool], downstream: Sink | None = None):
        super().__init__(downstream)
        self.predicate = predicate

    def send(self, event: GraphEvent) -> None:
        if self.predicate(event):
            self.emit(event)


class Tee(Filter):
    """Forwards to its downstream and to extra side sinks, side sinks first."""

    def __init__(self, *sides: Sink, downstream: Sink | None = None):
        super().__init__(downstream)
        self.sides = list(sides)

    def send(self, event: GraphEvent) -> None:
        for side in self.sides:
            side.send(event)
        self.emit(event)


def chain(stages: Sequence[Filter], sink: Sink) -> Sink:
    """Connect ``stages`` in order ending at ``sink``; return the entry point."""
    head: Sink = sink
    for stage in reversed(stages):
        stage.downstream = head
        head = stage
    return head


def pipe(source: Iterable[GraphEvent], stages: Sequence[Filter], sink: Sink) -> None:
    """Push every event of ``source`` through ``stages`` into ``sink``.

    A stage raising an exception (conventionally :class:`StreamAborted`) stops
    the pipe; the exception propagates to the caller.
    """
    entry = chain(stages, sink)
    send = entry.send
    for event in source:
        send(event)
