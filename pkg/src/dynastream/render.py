"""Static SVG snapshots with a force-directed layout."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .graph import DynamicGraph
from .rng import SplitMix64


@dataclass(frozen=True)
class RenderSpec:
    width: int = 600
    height: int = 600
    iterations: int = 300
    node_radius: float = 6.0
    margin: float = 30.0
    labels: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas dimensions must be positive")
        if self.iterations < 1:
            raise ValueError("iterations must be positive")
        if self.node_radius <= 0:
            raise ValueError("node radius must be positive")


def spring_layout(
    nodes: list[str],
    edges: list[tuple[str, str]],
    iterations: int = 300,
    seed: int = 0,
) -> dict[str, tuple[float, float]]:
    """Fruchterman-Reingold layout in the unit square.

    All pairs repel with k^2/d, edges attract with d^2/k, k = sqrt(1/n). The
    per-iteration displacement cap cools linearly from 0.1 to 0.
    """
    n = len(nodes)
    if n == 0:
        return {}
    rng = SplitMix64(seed)
    pos = np.array([[rng.random(), rng.random()] for _ in range(n)])
    if n == 1:
        return {nodes[0]: (0.5, 0.5)}
    index = {nid: i for i, nid in enumerate(nodes)}
    ei = np.array([(index[u], index[v]) for u, v in edges if u != v], dtype=int).reshape(-1, 2)
    k = np.sqrt(1.0 / n)
    t0 = 0.1
    for it in range(iterations):
        temp = t0 * (1.0 - it / iterations)
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=-1)
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-9)
        disp = (delta * (k * k / dist**2)[:, :, None]).sum(axis=1)
        if len(ei):
            d = pos[ei[:, 0]] - pos[ei[:, 1]]
            length = np.maximum(np.linalg.norm(d, axis=1), 1e-9)
            pull = d * (length / k)[:, None]
            np.add.at(disp, ei[:, 0], -pull)
            np.add.at(disp, ei[:, 1], pull)
        mag = np.maximum(np.linalg.norm(disp, axis=1), 1e-9)
        pos += disp / mag[:, None] * np.minimum(mag, temp)[:, None]
    return {nid: (float(pos[i, 0]), float(pos[i, 1])) for i, nid in enumerate(nodes)}


def fit_to_canvas(coords: dict[str, tuple[float, float]], spec: RenderSpec) -> dict[str, tuple[float, float]]:
    """Uniformly scale and centre ``coords`` into the canvas minus margins
    (aspect ratio kept, y axis pointing down as in SVG)."""
    if not coords:
        return {}
    xs = [p[0] for p in coords.values()]
    ys = [p[1] for p in coords.values()]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span_x, span_y = x1 - x0, y1 - y0
    avail_w = spec.width - 2 * spec.margin
    avail_h = spec.height - 2 * spec.margin
    spans = [a / s for a, s in ((avail_w, span_x), (avail_h, span_y)) if s > 0]
    scale = min(spans) if spans else 1.0
    cx = spec.width / 2 - scale * (x0 + x1) / 2
    cy = spec.height / 2 - scale * (y0 + y1) / 2
    return {nid: (cx + scale * x, cy + scale * y) for nid, (x, y) in coords.items()}


def _num(v: float) -> str:
    return f"{v:.3f}"


def node_positions(graph: DynamicGraph, spec: RenderSpec) -> dict[str, tuple[float, float]]:
    """Canvas positions: ``x``/``y`` attributes when every node has them,
    otherwise a spring layout."""
    nodes = sorted(graph.node_ids())
    if nodes and all(
        isinstance(graph.node_attrs(n).get("x"), float) and isinstance(graph.node_attrs(n).get("y"), float)
        for n in nodes
    ):
        raw = {n: (graph.node_attrs(n)["x"], graph.node_attrs(n)["y"]) for n in nodes}
    else:
        edges = [graph.endpoints(e) for e in sorted(graph.edge_ids())]
        raw = spring_layout(nodes, edges, spec.iterations, spec.seed)
    return fit_to_canvas(raw, spec)


def render_svg(graph: DynamicGraph, spec: RenderSpec | None = None, forest=None) -> str:
    """SVG 1.1 document for the current state of ``graph``.

    With ``forest`` (a :class:`~dynastream.algorithms.SpanningForest`), tree
    edges are drawn thick and black and token holders get twice the radius.
    """
    spec = spec or RenderSpec()
    pos = node_positions(graph, spec)
    tree_edges = forest.tree_edges if forest is not None else set()
    tokens = forest.tokens if forest is not None else set()
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect width="{spec.width}" height="{spec.height}" fill="white"/>',
        '<g id="edges">',
    ]
    for eid in sorted(graph.edge_ids()):
        u, v = graph.endpoints(eid)
        (x1, y1), (x2, y2) = pos[u], pos[v]
        if eid in tree_edges:
            style = 'class="tree" stroke="black" stroke-width="4"'
        else:
            style = 'stroke="#999999" stroke-width="1"'
        out.append(
            f'<line id={quoteattr("edge-" + eid)} x1="{_num(x1)}" y1="{_num(y1)}" '
            f'x2="{_num(x2)}" y2="{_num(y2)}" {style}/>'
        )
    out.append("</g>")
    out.append('<g id="nodes">')
    for nid in sorted(pos):
        x, y = pos[nid]
        r = spec.node_radius * (2 if nid in tokens else 1)
        cls = ' class="token"' if nid in tokens else ""
        out.append(
            f'<circle id={quoteattr("node-" + nid)}{cls} cx="{_num(x)}" cy="{_num(y)}" '
            f'r="{_num(r)}" fill="#3366cc" stroke="black"/>'
        )
        if spec.labels:
            out.append(
                f'<text x="{_num(x + r + 2)}" y="{_num(y - r - 2)}" font-size="12" '
                f'font-family="sans-serif">{escape(nid)}</text>'
            )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
