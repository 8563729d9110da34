"""Command-line entry point.

Exit statuses: 0 success, 1 usage error, 2 input parse/validation error,
3 runtime invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import sys
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator

from .algorithms import (
    CSV_HEADER,
    ComponentTracker,
    ForestError,
    SpanningForest,
    TrackerOutOfSync,
    tree_metrics,
)
from .dgs import DgsReader, DgsSyntaxError, format_number, save_dgs, dump_dgs
from .events import GraphEvent, StepBegins
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import DynamicGraph, GraphViolation
from .mobility import MobilityConfig, RandomWaypoint
from .pipeline import CountingSink
from .render import RenderSpec, render_svg
from .validation import Policy

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3


class CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


class InvariantViolation(CliError):
    def __init__(self, message: str):
        super().__init__(message, EXIT_INVARIANT)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- helpers


@contextmanager
def _open_events(path: str) -> Iterator[Iterator[tuple[int, GraphEvent]]]:
    try:
        fh = open(path, "rb")
    except OSError as err:
        raise CliError(f"{path}: {err.strerror}", EXIT_INPUT) from None
    with fh:
        try:
            reader = DgsReader(fh)
            yield reader.with_lines()
        except DgsSyntaxError as err:
            raise CliError(f"{path}: {err}", EXIT_INPUT) from None


def _step_str(t: float) -> str:
    return format_number(float(t))


def drive(
    lines: Iterable[tuple[int, GraphEvent]],
    graph: DynamicGraph,
    path: str,
    on_step_end: Callable[[float], None] | None = None,
) -> int:
    """Replay ``(line, event)`` pairs into ``graph``; call ``on_step_end(time)``
    after each step group completes. Returns the number of events read.

    Events before the first ``StepBegins`` form an implicit group at time 0,
    which an explicit ``st 0`` continues rather than closing.
    """
    open_time: float | None = None
    implicit = False
    total = 0
    for lineno, event in lines:
        total += 1
        if isinstance(event, StepBegins) and event.time >= graph.now:
            if open_time is not None and not (implicit and event.time == open_time):
                if on_step_end is not None:
                    on_step_end(open_time)
            open_time, implicit = event.time, False
        elif open_time is None:
            open_time, implicit = 0.0, True
        try:
            graph.apply_event(event)
        except GraphViolation as err:
            raise CliError(f"{path}:{lineno}: rejected event: {'; '.join(err.reasons)}", EXIT_INPUT) from None
        except (TrackerOutOfSync, ForestError) as err:
            raise InvariantViolation(f"{path}:{lineno}: {err}") from None
    if open_time is not None and on_step_end is not None:
        on_step_end(open_time)
    return total


def _policy(args) -> Policy:
    return Policy(strict=getattr(args, "strict", False))


# ---------------------------------------------------------------- commands


def cmd_generate(args) -> int:
    needed = {"grid": ("rows", "cols"), "torus": ("rows", "cols"), "random": ("n", "p"), "preferential": ("n", "k")}
    missing = [f"--{p}" for p in needed[args.family] if getattr(args, p) is None]
    if missing:
        raise CliError(f"generate {args.family} requires {' '.join(missing)}", EXIT_USAGE)
    params = {p: getattr(args, p) for p in needed[args.family]}
    try:
        events = generate(GeneratorSpec(args.family, params, args.seed))
    except ValueError as err:
        raise CliError(str(err), EXIT_USAGE) from None
    name = args.name or args.family
    _emit_dgs(events, args.output, name)
    return 0


def cmd_mobility(args) -> int:
    cfg = _mobility_config(args, args.seed)
    _emit_dgs(RandomWaypoint(cfg).events(), args.output, args.name)
    return 0


def _emit_dgs(events, output, name):
    try:
        if output in (None, "-"):
            dump_dgs(events, sys.stdout, name)
        else:
            save_dgs(events, output, name)
    except OSError as err:
        raise CliError(f"{output}: {err.strerror}", EXIT_INPUT) from None


def _mobility_config(args, seed) -> MobilityConfig:
    try:
        return MobilityConfig(
            n_stations=args.stations,
            width=args.width,
            height=args.height,
            radius=args.radius,
            v_min=args.vmin,
            v_max=args.vmax,
            n_ticks=args.ticks,
            seed=seed,
        )
    except ValueError as err:
        raise CliError(str(err), EXIT_USAGE) from None


def cmd_replay(args) -> int:
    graph = DynamicGraph(_policy(args))
    counter = CountingSink()
    graph.downstream = counter
    with _open_events(args.input) as lines:
        total = drive(lines, graph, args.input)
    print(
        f"nodes={graph.node_count} edges={graph.edge_count} last_step={_step_str(graph.now)} "
        f"events={total} skipped={graph.skipped}"
    )
    if args.stats:
        for kind in sorted(counter.by_type):
            print(f"forwarded.{kind}={counter.by_type[kind]}")
    return 0


def cmd_components(args) -> int:
    graph = DynamicGraph(_policy(args))
    tracker = ComponentTracker(graph)
    graph.downstream = tracker
    rows: list[tuple[str, int]] = []

    def on_step_end(t):
        if args.per_step:
            rows.append((_step_str(t), tracker.count))

    with _open_events(args.input) as lines:
        drive(lines, graph, args.input, on_step_end)
    if not args.per_step:
        rows.append((_step_str(graph.now), tracker.count))
    print("step,count")
    for step, count in rows:
        print(f"{step},{count}")
    return 0


class _ForestRun:
    """Forest + tracker attached to a graph, advanced once per step group."""

    def __init__(self, graph: DynamicGraph, seed: int, rounds: int, check: bool):
        self.tracker = ComponentTracker(graph)
        self.forest = SpanningForest(graph, seed)
        graph.downstream = self.tracker
        self.tracker.downstream = self.forest
        self.rounds = rounds
        self.check = check
        self.rows: list[tuple] = []

    def on_step_end(self, t):
        self.forest.run(self.rounds)
        if self.check:
            problems = self.forest.check_invariants(self.tracker)
            if problems:
                raise InvariantViolation(f"step {_step_str(t)}: " + "; ".join(problems))
        self.rows.extend(tree_metrics(self.forest).rows(_step_str(t)))


def cmd_forest(args) -> int:
    if (args.input is None) == (not args.mobility):
        raise CliError("forest needs exactly one of an input file or --mobility", EXIT_USAGE)
    graph = DynamicGraph(_policy(args))
    run = _ForestRun(graph, args.seed, args.steps_per_tick, not args.no_check)
    if args.mobility:
        cfg = _mobility_config(args, args.mobility_seed if args.mobility_seed is not None else args.seed)
        drive(((0, e) for e in RandomWaypoint(cfg).events()), graph, "<mobility>", run.on_step_end)
    else:
        with _open_events(args.input) as lines:
            drive(lines, graph, args.input, run.on_step_end)
    out = sys.stdout if args.metrics in (None, "-") else None
    try:
        fh = out or open(args.metrics, "w", newline="")
    except OSError as err:
        raise CliError(f"{args.metrics}: {err.strerror}", EXIT_INPUT) from None
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for step, size, count, diam, inner in run.rows:
            writer.writerow((step, size, count, repr(diam), repr(inner)))
    finally:
        if out is None:
            fh.close()
    if out is None:
        print(
            f"steps={len({r[0] for r in run.rows})} trees={run.forest.tree_count()} "
            f"tokens={run.forest.token_count} components={run.tracker.count}"
        )
    return 0


class _StopReplay(Exception):
    pass


def cmd_render(args) -> int:
    graph = DynamicGraph(_policy(args))
    run = _ForestRun(graph, args.seed, args.steps_per_tick, True) if args.forest else None
    seen_target = False

    def on_step_end(t):
        nonlocal seen_target
        if run is not None:
            run.on_step_end(t)
        if args.at is not None and t == args.at:
            seen_target = True
            raise _StopReplay

    with _open_events(args.input) as lines:
        try:
            drive(lines, graph, args.input, on_step_end)
        except _StopReplay:
            pass
    if args.at is not None and not seen_target:
        raise CliError(f"{args.input}: no step {_step_str(args.at)} in trace", EXIT_INPUT)
    try:
        spec = RenderSpec(args.width, args.height, args.iterations, args.node_radius, seed=args.layout_seed)
    except ValueError as err:
        raise CliError(str(err), EXIT_USAGE) from None
    svg = render_svg(graph, spec, run.forest if run else None)
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as err:
        raise CliError(f"{args.output}: {err.strerror}", EXIT_INPUT) from None
    return 0


# ---------------------------------------------------------------- parser


def _add_mobility_flags(p):
    p.add_argument("--stations", type=int, default=30)
    p.add_argument("--ticks", type=int, default=100, help="step groups to emit, tick 0 included")
    p.add_argument("--width", type=float, default=1000.0)
    p.add_argument("--height", type=float, default=1000.0)
    p.add_argument("--radius", type=float, default=200.0)
    p.add_argument("--vmin", type=float, default=1.0)
    p.add_argument("--vmax", type=float, default=20.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dynastream", description="Dynamic graph event-stream tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a generated graph as DGS")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("mobility", help="write a random-waypoint MANET trace as DGS")
    _add_mobility_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name", default="manet")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_mobility)

    p = sub.add_parser("replay", help="replay a DGS trace and print a summary")
    p.add_argument("input")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("components", help="connected component counts")
    p.add_argument("input")
    p.add_argument("--per-step", action="store_true")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("forest", help="run the token spanning forest and export tree metrics")
    p.add_argument("input", nargs="?")
    p.add_argument("--mobility", action="store_true", help="use a generated MANET trace as input")
    _add_mobility_flags(p)
    p.add_argument("--mobility-seed", type=int)
    p.add_argument("--steps-per-tick", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metrics", help="CSV output path (default stdout)")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--no-check", action="store_true", help="skip per-step invariant checks")
    p.set_defaults(func=cmd_forest)

    p = sub.add_parser("render", help="write an SVG snapshot")
    p.add_argument("input")
    p.add_argument("--at", type=float, help="step time to render (default: end of trace)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--width", type=int, default=600)
    p.add_argument("--height", type=int, default=600)
    p.add_argument("--iterations", type=int, default=300)
    p.add_argument("--node-radius", type=float, default=6.0)
    p.add_argument("--layout-seed", type=int, default=0)
    p.add_argument("--forest", action="store_true", help="style tree edges and token holders")
    p.add_argument("--steps-per-tick", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="forest seed")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        print(f"dynastream: {err}", file=sys.stderr)
        return err.status


if __name__ == "__main__":
    sys.exit(main())
