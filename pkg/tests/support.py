"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

import dtlab

# Filled by test_acceptance.py; printed by the conftest terminal-summary hook.
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def record_acceptance(name: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS.append((name, ok, detail))


def random_instance(rng, n: int, kind: str = "euclidean") -> dtlab.MetricInstance:
    return dtlab.MetricInstance.from_points(
        rng.uniform(0.0, 10.0, size=(n, 2)), kind=kind)


def random_tree(rng, n: int) -> dtlab.RootedTree:
    parent = [0] * n
    for v in range(1, n):
        parent[v] = int(rng.integers(0, v))
    return dtlab.RootedTree(parent, root=0)


def normalized_edges(tree: dtlab.RootedTree) -> list[tuple[int, int]]:
    return sorted(tuple(sorted(map(int, e))) for e in tree.edges())


def kruskal_weight(matrix) -> float:
    """Independent MST weight oracle (plain Kruskal with union-find)."""
    d = np.asarray(matrix, dtype=float)
    n = d.shape[0]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total, used = 0.0, 0
    for w, u, v in sorted((d[u, v], u, v) for u in range(n) for v in range(u + 1, n)):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            total += w
            used += 1
            if used == n - 1:
                break
    return total
