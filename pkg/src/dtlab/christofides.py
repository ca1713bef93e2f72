"""Christofides baseline: MST + exact matching on odd-degree nodes +
Euler tour + first-occurrence shortcutting.

The matching solver is an exact subset DP and is deliberately capped at 18
odd-degree nodes; this is a reference baseline for instances engineered to
need tiny matchings, not a general blossom implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .doubletree import Tour
from .errors import GuardError, InputError
from .metric import as_matrix
from .spanning import RootedTree, prim_mst

MATCHING_MAX_NODES = 18


def odd_degree_nodes(tree: RootedTree) -> list[int]:
    out = []
    for v in range(tree.n):
        deg = len(tree.children[v]) + (0 if v == tree.root else 1)
        if deg % 2:
            out.append(v)
    return out


def exact_min_matching(nodes, m) -> list[tuple[int, int]]:
    """Minimum-weight perfect matching on ``nodes`` by subset DP."""
    nodes = sorted(int(v) for v in nodes)
    k = len(nodes)
    if k % 2:
        raise InputError(f"cannot perfectly match {k} nodes")
    if k > MATCHING_MAX_NODES:
        raise GuardError(
            f"matching too large for exact solver ({k} nodes, cap "
            f"{MATCHING_MAX_NODES})")
    if k == 0:
        return []
    d = as_matrix(m)
    sub = d[np.ix_(nodes, nodes)]
    full = (1 << k) - 1
    cost = np.full(full + 1, np.inf)
    cost[0] = 0.0
    mate = np.full(full + 1, -1, dtype=np.int64)  # partner of the lowest bit
    for mask in range(1, full + 1):
        if bin(mask).count("1") % 2:
            continue
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        best, arg = np.inf, -1
        j = rest
        while j:
            b = (j & -j).bit_length() - 1
            w = cost[mask ^ (1 << i) ^ (1 << b)] + sub[i, b]
            if w < best:
                best, arg = w, b
            j ^= 1 << b
        cost[mask] = best
        mate[mask] = arg
    pairs = []
    mask = full
    while mask:
        i = (mask & -mask).bit_length() - 1
        j = int(mate[mask])
        pairs.append((nodes[i], nodes[j]))
        mask ^= (1 << i) | (1 << j)
    return sorted(pairs)


@dataclass
class Multigraph:
    """Undirected multigraph over nodes 0..n-1; edges carry multiplicities."""

    n: int
    mult: dict = field(default_factory=dict)  # (u, v) with u < v -> count

    def add_edge(self, u: int, v: int, count: int = 1) -> None:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise InputError(f"bad multigraph edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        self.mult[key] = self.mult.get(key, 0) + count

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for (u, v), c in self.mult.items():
            deg[u] += c
            deg[v] += c
        return deg

    def edge_multiset(self) -> list[tuple[int, int]]:
        out = []
        for (u, v), c in sorted(self.mult.items()):
            out.extend([(u, v)] * c)
        return out


def euler_tour(g: Multigraph) -> list[int]:
    """Closed walk using every edge exactly its multiplicity (Hierholzer).

    Deterministic: starts at the smallest non-isolated node and always
    consumes the smallest available neighbor.
    """
    if g.n == 1:
        return [0]
    deg = g.degrees()
    odd = [v for v in range(g.n) if deg[v] % 2]
    if odd:
        raise InputError(f"multigraph has odd-degree nodes {odd[:4]}")
    if not g.mult:
        raise InputError("multigraph has no edges")
    rem = dict(g.mult)
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in sorted(g.mult):
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj:
        lst.sort()
    ptr = [0] * g.n
    start = min(v for v in range(g.n) if deg[v])
    stack = [start]
    walk = []
    while stack:
        u = stack[-1]
        lst = adj[u]
        while ptr[u] < len(lst):
            v = lst[ptr[u]]
            key = (min(u, v), max(u, v))
            if rem.get(key, 0) > 0:
                break
            ptr[u] += 1
        else:
            walk.append(stack.pop())
            continue
        rem[key] -= 1
        stack.append(v)
    walk.reverse()
    if any(rem.values()) or len(set(walk)) != g.n:
        raise InputError("multigraph is not connected")
    return walk


def christofides_tour(m, root: int = 0) -> tuple[Tour, float]:
    """MST + exact odd-node matching + Euler tour + first-occurrence
    shortcut.  Returns (tour, weight)."""
    d = as_matrix(m)
    n = d.shape[0]
    if n == 1:
        return Tour((0,)), 0.0
    tree = prim_mst(d, root)
    g = Multigraph(n)
    for p, v in tree.edges():
        g.add_edge(p, v)
    for u, v in exact_min_matching(odd_degree_nodes(tree), d):
        g.add_edge(u, v)
    walk = euler_tour(g)
    walk_weight = float(sum(d[walk[i], walk[i + 1]] for i in range(len(walk) - 1)))
    seen = set()
    order = []
    for v in walk:
        if v not in seen:
            seen.add(v)
            order.append(v)
    tour = Tour(tuple(order)).canonical()
    weight = tour.weight(d)
    # shortcutting can only drop weight in a metric
    assert weight <= walk_weight + 1e-9, "shortcut exceeded the Euler walk"
    return tour, weight
