"""Point universes and distance functions.

Three metric kinds are supported:

* ``euclidean`` -- plane points under the usual L2 distance,
* ``hexagonal`` -- plane points under the Minkowski gauge of a regular
  hexagon with circumradius 1 (vertices at 30 + 60k degrees),
* ``explicit`` -- an arbitrary finite metric given by a dense matrix,
  e.g. the shortest-path closure of a weighted graph.

Every :class:`MetricInstance` carries a dense, read-only distance matrix so
downstream algorithms never need to care which kind they got.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InputError

SQRT3 = np.sqrt(3.0)

# Outward edge normals of the hexagon (one per opposite-edge pair).  The
# apothem is sqrt(3)/2, hence the 2/sqrt(3) factor in the gauge.
_HEX_AXES = np.array([[1.0, 0.0], [0.5, SQRT3 / 2.0], [-0.5, SQRT3 / 2.0]])


class Point2D(NamedTuple):
    x: float
    y: float


def as_matrix(m) -> np.ndarray:
    """Accept a MetricInstance or a bare distance matrix."""
    if isinstance(m, MetricInstance):
        return m.matrix
    return np.asarray(m, dtype=float)


def euclidean_distance(p, q) -> float:
    return float(np.hypot(p[0] - q[0], p[1] - q[1]))


def hexagonal_gauge(dx: float, dy: float) -> float:
    """Gauge of the regular hexagon, evaluated at the vector (dx, dy).

    Satisfies euclid <= hex <= (2/sqrt(3)) * euclid, with equality on the
    left in the six vertex directions and on the right in the six
    edge-normal directions.
    """
    a = abs(dx * _HEX_AXES[0, 0] + dy * _HEX_AXES[0, 1])
    b = abs(dx * _HEX_AXES[1, 0] + dy * _HEX_AXES[1, 1])
    c = abs(dx * _HEX_AXES[2, 0] + dy * _HEX_AXES[2, 1])
    return float(max(a, b, c) * 2.0 / SQRT3)


def hexagonal_distance(p, q) -> float:
    return hexagonal_gauge(p[0] - q[0], p[1] - q[1])


def _euclidean_matrix(coords: np.ndarray) -> np.ndarray:
    diff = coords[:, None, :] - coords[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def _hexagonal_matrix(coords: np.ndarray) -> np.ndarray:
    # Project all pairwise difference vectors on the three axes at once.
    diff = coords[:, None, :] - coords[None, :, :]
    proj = np.abs(np.einsum("ijk,ak->ija", diff, _HEX_AXES))
    return proj.max(axis=2) * (2.0 / SQRT3)


_MATRIX_BUILDERS = {"euclidean": _euclidean_matrix, "hexagonal": _hexagonal_matrix}


@dataclass
class WeightedGraph:
    """Undirected graph with weighted edges over nodes 0..n-1."""

    n: int
    edges: list[tuple[int, int, float]] = field(default_factory=list)

    def add_edge(self, u: int, v: int, w: float) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            raise InputError(f"bad edge ({u}, {v}) in graph on {self.n} nodes")
        if w < 0:
            raise InputError(f"negative edge weight {w}")
        self.edges.append((u, v, float(w)))

    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj


def shortest_path_metric(graph: WeightedGraph) -> np.ndarray:
    """All-pairs shortest-path matrix of a connected weighted graph."""
    n = graph.n
    adj = graph.adjacency()
    out = np.full((n, n), np.inf)
    for src in range(n):
        dist = out[src]
        dist[src] = 0.0
        heap = [(0.0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w in adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
    if np.isinf(out).any():
        raise InputError("graph is not connected")
    return out


@dataclass(frozen=True)
class MetricInstance:
    """A finite metric space, with optional plane coordinates."""

    kind: str  # 'euclidean' | 'hexagonal' | 'explicit'
    matrix: np.ndarray
    coords: np.ndarray | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputError("distance matrix must be square")
        if m.shape[0] < 1:
            raise InputError("empty instance")
        if np.diag(m).any():
            raise InputError("distance matrix has a nonzero diagonal entry")
        if (m < 0).any():
            raise InputError("distance matrix has a negative entry")
        if not np.array_equal(m, m.T):
            raise InputError("distance matrix is not symmetric")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.coords is not None:
            c = np.asarray(self.coords, dtype=float)
            if c.shape != (m.shape[0], 2):
                raise InputError("coords must have shape (n, 2)")
            c.setflags(write=False)
            object.__setattr__(self, "coords", c)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def distance(self, i: int, j: int) -> float:
        return float(self.matrix[i, j])

    @classmethod
    def from_points(cls, points, kind: str = "euclidean") -> "MetricInstance":
        if kind not in _MATRIX_BUILDERS:
            raise InputError(f"unknown point metric kind {kind!r}")
        coords = np.asarray(points, dtype=float).reshape(-1, 2)
        return cls(kind=kind, matrix=_MATRIX_BUILDERS[kind](coords), coords=coords)

    @classmethod
    def from_matrix(cls, matrix, coords=None) -> "MetricInstance":
        return cls(kind="explicit", matrix=np.asarray(matrix, dtype=float), coords=coords)

    @classmethod
    def from_graph(cls, graph: WeightedGraph, coords=None) -> "MetricInstance":
        """Shortest-path metric closure of a connected weighted graph."""
        return cls(kind="explicit", matrix=shortest_path_metric(graph), coords=coords)


class MetricReport(NamedTuple):
    ok: bool
    checked_triples: int
    failure: tuple[int, int, int] | None = None
    kind: str | None = None  # 'diagonal' | 'symmetry' | 'triangle'


def verify_metric(inst: MetricInstance, sample_budget: int = 200_000,
                  seed: int = 0, tol: float = 1e-9) -> MetricReport:
    """Check zero diagonal, symmetry, and the triangle inequality.

    The triangle check is exhaustive for n <= 64 and sampled above that.
    Returns the first violating triple (i, j, k) with
    d(i,k) > d(i,j) + d(j,k) + tol, if any.
    """
    d = inst.matrix
    n = inst.n
    bad_diag = np.flatnonzero(np.diag(d))
    if len(bad_diag):
        i = int(bad_diag[0])
        return MetricReport(False, 0, (i, i, i), "diagonal")
    asym = np.argwhere(np.abs(d - d.T) > tol)
    if len(asym):
        i, j = map(int, asym[0])
        return MetricReport(False, 0, (i, j, j), "symmetry")
    if n <= 64:
        checked = 0
        for j in range(n):
            bound = d[:, j][:, None] + d[j, :][None, :]
            checked += n * n
            bad = np.argwhere(d > bound + tol)
            if len(bad):
                i, k = map(int, bad[0])
                return MetricReport(False, checked, (i, j, k), "triangle")
        return MetricReport(True, checked, None)
    rng = np.random.default_rng(seed)
    trip = rng.integers(0, n, size=(sample_budget, 3))
    lhs = d[trip[:, 0], trip[:, 2]]
    rhs = d[trip[:, 0], trip[:, 1]] + d[trip[:, 1], trip[:, 2]]
    bad = np.flatnonzero(lhs > rhs + tol)
    if len(bad):
        i, j, k = map(int, trip[bad[0]])
        return MetricReport(False, sample_budget, (i, j, k), "triangle")
    return MetricReport(True, sample_budget, None)
