"""Deterministic SVG 1.1 rendering of instances, trees and tours.

Output structure: solid ``<line>`` per spanning-tree edge, dotted ``<line>``
per auxiliary graph edge, one ``<path>`` per tour, then one ``<circle>`` per
point.  Everything is emitted in a fixed order with fixed formatting so the
same inputs always produce byte-identical files.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError

TOUR_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def pixel_coords(coords, width: float = 640.0, pad: float = 20.0) -> np.ndarray:
    """Map plane coordinates to the pixel frame used by :func:`render_svg`."""
    c = np.asarray(coords, dtype=float)
    lo = c.min(axis=0)
    extent = c.max(axis=0) - lo
    scale = (width - 2 * pad) / max(extent[0], extent[1], 1e-12)
    out = np.empty_like(c)
    out[:, 0] = pad + (c[:, 0] - lo[0]) * scale
    out[:, 1] = pad + (extent[1] - (c[:, 1] - lo[1])) * scale
    return out


def render_svg(coords, mst_edges=(), extra_edges=(), tours=(),
               width: float = 640.0, point_radius: float = 2.0) -> str:
    if coords is None:
        raise InputError("cannot render an instance without coordinates")
    c = np.asarray(coords, dtype=float)
    if c.ndim != 2 or c.shape[1] != 2 or not len(c):
        raise InputError("render needs an (n, 2) coordinate array")
    n = len(c)
    pad = 20.0
    p = pixel_coords(c, width=width, pad=pad)
    height = p[:, 1].max() + pad

    def check(v: int) -> int:
        if not 0 <= v < n:
            raise InputError(f"node index {v} out of range for {n} points")
        return int(v)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    for u, v in mst_edges:
        u, v = check(u), check(v)
        out.append(f'  <line class="tree" x1="{_fmt(p[u, 0])}" y1="{_fmt(p[u, 1])}" '
                   f'x2="{_fmt(p[v, 0])}" y2="{_fmt(p[v, 1])}" '
                   f'stroke="#333333" stroke-width="1.2"/>')
    for u, v in extra_edges:
        u, v = check(u), check(v)
        out.append(f'  <line class="aux" x1="{_fmt(p[u, 0])}" y1="{_fmt(p[u, 1])}" '
                   f'x2="{_fmt(p[v, 0])}" y2="{_fmt(p[v, 1])}" '
                   f'stroke="#999999" stroke-width="1.0" stroke-dasharray="3 3"/>')
    for t, tour in enumerate(tours):
        order = [check(v) for v in getattr(tour, "order", tour)]
        if not order:
            raise InputError("cannot render an empty tour")
        color = TOUR_COLORS[t % len(TOUR_COLORS)]
        d = "M " + " L ".join(f"{_fmt(p[v, 0])} {_fmt(p[v, 1])}" for v in order) + " Z"
        out.append(f'  <path class="tour" d="{d}" fill="none" '
                   f'stroke="{color}" stroke-width="1.5" opacity="0.85"/>')
    for i in range(n):
        out.append(f'  <circle cx="{_fmt(p[i, 0])}" cy="{_fmt(p[i, 1])}" '
                   f'r="{_fmt(point_radius)}" fill="#000000"/>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def write_svg(path, coords, mst_edges=(), extra_edges=(), tours=(),
              width: float = 640.0) -> None:
    svg = render_svg(coords, mst_edges=mst_edges, extra_edges=extra_edges,
                     tours=tours, width=width)
    with open(path, "w") as fh:
        fh.write(svg)
