"""Generators for the lower-bound instance families.

Every generator returns an :class:`InstanceBundle`: the metric itself plus
everything needed to reproduce and check an experiment without re-deriving
it -- the canonical root, the spanning tree the greedy MST is expected to
find, a short reference tour certifying near-optimal weight, and closed-form
weights for ratio reporting.

Families
--------
``comb``
    A comb with ``n + 1`` unit teeth hanging from a unit-spaced spine; each
    spine cell is subdivided by a point ``eps`` to the right of a tooth so
    that depth-first shortcutting zig-zags across the teeth while the
    perimeter tour stays near the tree weight.
``christofides-comb``
    The comb re-labeled so teeth alternate up/down and the greedy tree is a
    zig-zag path with exactly two odd-degree nodes at opposite corners; the
    matching edge then spans the whole diagonal.
``twin-trees``
    Two copies of a complete binary tree on 2^k nodes each (a stem plus a
    heap), with corresponding heap nodes joined pairwise by ``1 + eps``
    cross edges; the metric is the shortest-path closure.  Any tour that
    keeps subtrees contiguous must pay roughly twice the tree weight.
``star``
    Three arms at 120 degrees; each arm carries two parallel rows of points
    so neighbouring arms offer cheap row-to-row jumps.  Optimal shortcutting
    pays about ``(8 + sqrt 3)`` per row pair under the Euclidean metric and
    ``10`` under the hexagon gauge, while the reference tour pays about 6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .doubletree import Tour
from .errors import InputError
from .metric import (MetricInstance, SQRT3, WeightedGraph, euclidean_distance,
                     hexagonal_distance)
from .tsplib import write_sidecar, write_tsplib

FAMILIES = ("comb", "christofides-comb", "twin-trees", "star")

_DIST_FN = {"euclidean": euclidean_distance, "hexagonal": hexagonal_distance}


@dataclass
class InstanceBundle:
    """A generated instance together with its certificates."""

    family: str
    params: dict
    metric: MetricInstance
    root: int
    reference_tour: Tour
    analytic: dict
    expected_mst: list = field(default_factory=list)
    extra_edges: list | None = None
    layout: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.metric.n

    def layout_coords(self):
        """Drawing coordinates: explicit layout, else the metric's points."""
        if self.layout is not None:
            return np.asarray(self.layout, dtype=float)
        return self.metric.coords

    def sidecar_payload(self) -> dict:
        layout = self.layout_coords()
        return {
            "family": self.family,
            "params": self.params,
            "root": self.root,
            "analytic": self.analytic,
            "reference_tour": list(self.reference_tour.order),
            "expected_mst": [list(e) for e in self.expected_mst],
            "extra_edges": (None if self.extra_edges is None
                            else [list(e) for e in self.extra_edges]),
            "layout": None if layout is None else layout.tolist(),
        }

    def save(self, path) -> None:
        write_tsplib(self.metric, path, name=f"{self.family}")
        write_sidecar(path, self.sidecar_payload())


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _check_metric_kind(kind: str) -> None:
    if kind not in _DIST_FN:
        raise InputError(f"unknown point metric kind {kind!r}")


def _unit_steps(kind: str) -> tuple[float, float]:
    """Length of a unit x step and a unit y step under the point metric."""
    fn = _DIST_FN[kind]
    return fn((0.0, 0.0), (1.0, 0.0)), fn((0.0, 0.0), (0.0, 1.0))


def _default_eps(n: int, eps) -> float:
    eps = 1.0 / n if eps is None else float(eps)
    if not 0.0 < eps < 0.5:
        raise InputError(f"eps must lie in (0, 1/2), got {eps}")
    return eps


def gen_comb(n: int, eps: float | None = None,
             metric: str = "euclidean") -> InstanceBundle:
    """Comb on ``3n + 2`` points: teeth at x = 0..n, spine split points at
    x = i + eps."""
    if not isinstance(n, int) or n < 2:
        raise InputError(f"comb needs an integer n >= 2, got {n}")
    _check_metric_kind(metric)
    eps = _default_eps(n, eps)

    def top(i): return i
    def bottom(i): return n + 1 + i
    def off(i): return 2 * n + 2 + i

    pts = ([(float(i), 1.0) for i in range(n + 1)]
           + [(float(i), 0.0) for i in range(n + 1)]
           + [(i + eps, 1.0) for i in range(n)])
    inst = MetricInstance.from_points(pts, kind=metric)

    mst = [_norm(top(i), bottom(i)) for i in range(n + 1)]
    for i in range(n):
        mst += [_norm(top(i), off(i)), _norm(off(i), top(i + 1))]

    order = [bottom(i) for i in range(n + 1)] + [top(n)]
    for i in range(n - 1, -1, -1):
        order += [off(i), top(i)]
    ref = Tour(tuple(order)).canonical()

    fn = _DIST_FN[metric]
    dx, dy = _unit_steps(metric)
    diag = fn((0.0, 0.0), (eps, 1.0))
    analytic = {
        "mst_weight": (n + 1) * dy + n * dx,
        "reference_weight": 2 * n * dx + 2 * dy,
        "depth_first_weight": n * (dy + diag + (1 - eps) * dx) + dy
                              + fn((0.0, 0.0), (float(n), 1.0)),
    }
    return InstanceBundle("comb", {"n": n, "eps": eps, "metric": metric},
                          inst, root=0, reference_tour=ref,
                          analytic=analytic, expected_mst=sorted(mst))


def gen_christofides_comb(n: int, eps: float | None = None,
                          metric: str = "euclidean") -> InstanceBundle:
    """Comb re-labeled so the greedy tree is a zig-zag Hamiltonian path.

    Teeth alternate: column j keeps its landing node L_j on row ``j mod 2``
    and its departure node D_j on the other row.  Indices are chosen so the
    lexicographic tie-break of the greedy MST walks the zig-zag: root (0,1)
    is 0, landings L_n..L_1 get 1..n, departures D_1..D_n get n+1..2n, the
    corner (0,0) is 2n+1 and split points follow.
    """
    if not isinstance(n, int) or n < 2 or n % 2:
        raise InputError(f"christofides-comb needs an even integer n >= 2, got {n}")
    _check_metric_kind(metric)
    eps = _default_eps(n, eps)

    pts = [(0.0, 1.0)]
    for i in range(1, n + 1):            # index i is L_{n+1-i}
        j = n + 1 - i
        pts.append((float(j), 1.0 if j % 2 else 0.0))
    for j in range(1, n + 1):            # index n + j is D_j
        pts.append((float(j), 0.0 if j % 2 else 1.0))
    pts.append((0.0, 0.0))               # index 2n + 1
    for i in range(n):                   # index 2n + 2 + i splits segment i
        pts.append((i + eps, 1.0 if i % 2 == 0 else 0.0))
    inst = MetricInstance.from_points(pts, kind=metric)

    def landing(j): return n + 1 - j
    def departure(j): return n + j
    def off(i): return 2 * n + 2 + i

    mst = [_norm(0, 2 * n + 1)]
    mst += [_norm(landing(j), departure(j)) for j in range(1, n + 1)]
    mst += [_norm(0, off(0)), _norm(off(0), landing(1))]
    for i in range(1, n):
        mst += [_norm(departure(i), off(i)), _norm(off(i), landing(i + 1))]

    coords = inst.coords
    bottom = sorted((v for v in range(inst.n) if coords[v, 1] == 0.0),
                    key=lambda v: coords[v, 0])
    topside = sorted((v for v in range(inst.n) if coords[v, 1] == 1.0),
                     key=lambda v: -coords[v, 0])
    ref = Tour(tuple(bottom + topside)).canonical()

    fn = _DIST_FN[metric]
    dx, dy = _unit_steps(metric)
    mst_weight = (n + 1) * dy + n * dx
    analytic = {
        "mst_weight": mst_weight,
        "reference_weight": 2 * n * dx + 2 * dy,
        "christofides_weight": mst_weight + fn((0.0, 0.0), (float(n), 1.0)),
    }
    return InstanceBundle("christofides-comb",
                          {"n": n, "eps": eps, "metric": metric},
                          inst, root=0, reference_tour=ref,
                          analytic=analytic, expected_mst=sorted(mst))


def _heap_inorder(n: int) -> list[int]:
    out: list[int] = []

    def rec(h: int) -> None:
        if 2 * h <= n - 1:
            rec(2 * h)
        out.append(h)
        if 2 * h + 1 <= n - 1:
            rec(2 * h + 1)

    rec(1)
    return out


def gen_twin_trees(k: int, eps: float | None = None) -> InstanceBundle:
    """Two complete binary trees of height k joined leaf-to-leaf.

    Nodes 0..n-1 are the first copy (0 is a stem above heap root 1; heap
    node h has children 2h, 2h+1), nodes n..2n-1 the second copy.  Tree
    edges and the stem-stem edge weigh 1, the n-1 cross edges ``(v, v + n)``
    weigh 1 + eps, and the instance is the shortest-path closure.
    """
    if not isinstance(k, int) or k < 2:
        raise InputError(f"twin-trees needs an integer k >= 2, got {k}")
    n = 2 ** k
    eps = 1.0 / n if eps is None else float(eps)
    if not 0.0 < eps < 1.0:
        raise InputError(f"eps must lie in (0, 1), got {eps}")

    g = WeightedGraph(2 * n)
    unit_edges = [(0, 1)] + [(h // 2, h) for h in range(2, n)]
    for u, v in list(unit_edges):
        unit_edges.append((u + n, v + n))
    unit_edges.append((0, n))
    for u, v in unit_edges:
        g.add_edge(u, v, 1.0)
    cross = [(h, h + n) for h in range(1, n)]
    for u, v in cross:
        g.add_edge(u, v, 1.0 + eps)

    inorder = _heap_inorder(n)
    xs = np.zeros(2 * n)
    ys = np.zeros(2 * n)
    for rank, h in enumerate(inorder):
        xs[h] = xs[h + n] = float(rank)
        depth = h.bit_length()  # heap root at depth 1
        ys[h] = float(depth)
        ys[h + n] = float(2 * k + 1 - depth)
    xs[0] = xs[n] = xs[1]
    ys[0], ys[n] = 0.0, float(2 * k + 1)
    layout = np.column_stack([xs, ys])

    inst = MetricInstance.from_graph(g, coords=layout)

    order = [0]
    for i, v in enumerate(inorder):
        order += [v, v + n] if i % 2 == 0 else [v + n, v]
    order.append(n)
    ref = Tour(tuple(order)).canonical()

    analytic = {
        "mst_weight": 2 * n - 1.0,
        "reference_weight": 3 * n - 2 + (n - 1) * eps,
        "min_dt_lower_bound": 4 * n - 4.0 * (2 * k + 2),
    }
    return InstanceBundle("twin-trees", {"k": k, "eps": eps},
                          inst, root=0, reference_tour=ref,
                          analytic=analytic,
                          expected_mst=sorted(_norm(u, v) for u, v in unit_edges),
                          extra_edges=sorted(cross), layout=layout)


def gen_star(n: int, r_inner: float = 0.5, r_outer: float = 1.0,
             metric: str = "euclidean") -> InstanceBundle:
    """Three-armed star on ``6n + 1`` points.

    Arm X sits at angle 30 + 120 X degrees and carries an inner point, an
    arm origin, and two unit-spaced rows of ``n - 1`` points leaving the
    origin at +-60 degrees from the arm axis.  The plus row of each arm is
    parallel to the minus row of the next arm, sqrt(3) away, which is what
    optimal shortcutting exploits.
    """
    if not isinstance(n, int) or n < 2:
        raise InputError(f"star needs an integer n >= 2, got {n}")
    _check_metric_kind(metric)
    r_inner, r_outer = float(r_inner), float(r_outer)
    if not 0.0 < r_inner < r_outer:
        raise InputError(
            f"need 0 < r_inner < r_outer, got {r_inner}, {r_outer}")

    def unit(deg: float) -> np.ndarray:
        a = math.radians(deg)
        return np.array([math.cos(a), math.sin(a)])

    arm_dir = [unit(30.0 + 120.0 * x) for x in range(3)]
    plus_dir = [unit(30.0 + 120.0 * x + 60.0) for x in range(3)]
    minus_dir = [unit(30.0 + 120.0 * x - 60.0) for x in range(3)]

    pts = [np.zeros(2)]
    pts += [r_inner * arm_dir[x] for x in range(3)]
    origins = [r_outer * arm_dir[x] for x in range(3)]
    pts += origins
    base = 7

    def plus(x, t): return base + x * 2 * (n - 1) + t
    def minus(x, t): return base + x * 2 * (n - 1) + (n - 1) + t

    for x in range(3):
        pts += [origins[x] + (t + 1) * plus_dir[x] for t in range(n - 1)]
        pts += [origins[x] + (t + 1) * minus_dir[x] for t in range(n - 1)]
    inst = MetricInstance.from_points(np.array(pts), kind=metric)

    mst = []
    for x in range(3):
        mst += [_norm(0, 1 + x), _norm(1 + x, 4 + x)]
        for row in (plus, minus):
            mst.append(_norm(4 + x, row(x, 0)))
            mst += [_norm(row(x, t), row(x, t + 1)) for t in range(n - 2)]

    def row_out(x): return [plus(x, t) for t in range(n - 1)]
    def row_in(x): return [minus(x, t) for t in range(n - 2, -1, -1)]

    order = ([0, 3, 6] + row_out(2) + row_in(0) + [4, 1]
             + row_out(0) + row_in(1) + [5, 2]
             + row_out(1) + row_in(2))
    ref = Tour(tuple(order)).canonical()

    fn = _DIST_FN[metric]
    p = np.asarray(pts)
    hop = fn(tuple(p[plus(2, n - 2)]), tuple(p[minus(0, n - 2)]))
    enter = fn(tuple(p[1]), tuple(p[plus(0, 0)]))
    close = fn(tuple(p[minus(2, 0)]), (0.0, 0.0))
    analytic = {
        "mst_weight": 3 * r_outer + 6.0 * (n - 1),
        "reference_weight": (2 * r_outer + 3.0 + 6.0 * (n - 2)
                             + 3 * hop + 2 * enter + close),
    }
    if (r_inner, r_outer) == (0.5, 1.0):
        analytic["min_dt_weight_per_n"] = 8.0 + SQRT3 if metric == "euclidean" else 10.0
    return InstanceBundle("star",
                          {"n": n, "r_inner": r_inner, "r_outer": r_outer,
                           "metric": metric},
                          inst, root=0, reference_tour=ref,
                          analytic=analytic, expected_mst=sorted(mst))
