"""Dynamic graphs as streams of timestamped events.

Sources (generators, mobility simulation, DGS files) feed filters and sinks
(the in-memory :class:`DynamicGraph`, component tracking, the token spanning
forest, writers).
"""

from .dgs import DgsReader, DgsSyntaxError, DgsWriteError, load_dgs, parse_dgs, read_dgs, save_dgs, write_dgs
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
    steps,
)
from .generators import GeneratorSpec, generate, grid, preferential, random_graph, torus
from .graph import DynamicGraph, GraphSnapshot, GraphViolation
from .mobility import MobilityConfig, RandomWaypoint, mob_run, proximity_pairs
from .pipeline import Collector, CountingSink, DropAttributes, Filter, Select, StreamAborted, Tee, pipe
from .rng import SplitMix64
from .validation import Policy, Violation, validate_stream

__version__ = "0.1.0"

__all__ = [
    "Collector",
    "CountingSink",
    "DgsReader",
    "DgsSyntaxError",
    "DgsWriteError",
    "DropAttributes",
    "DynamicGraph",
    "EdgeAdded",
    "EdgeAttrChanged",
    "EdgeRemoved",
    "Filter",
    "GeneratorSpec",
    "GraphAttrChanged",
    "GraphEvent",
    "GraphSnapshot",
    "GraphViolation",
    "MobilityConfig",
    "NodeAdded",
    "NodeAttrChanged",
    "NodeRemoved",
    "Policy",
    "RandomWaypoint",
    "Select",
    "SplitMix64",
    "StepBegins",
    "StreamAborted",
    "Tee",
    "Violation",
    "generate",
    "grid",
    "load_dgs",
    "mob_run",
    "parse_dgs",
    "pipe",
    "preferential",
    "proximity_pairs",
    "random_graph",
    "read_dgs",
    "save_dgs",
    "steps",
    "torus",
    "validate_stream",
    "write_dgs",
]
