"""Small exact references.

Everything here is exponential and intentionally guarded to tiny sizes; the
point is to have independent ground truth for the fast code paths, not to be
usable on real instances.
"""

from __future__ import annotations

import itertools

import numpy as np

from .doubletree import Tour
from .errors import GuardError
from .metric import as_matrix
from .spanning import RootedTree

HELD_KARP_MAX_N = 16
BRUTE_DT_MAX_N = 9
ENUMERATE_MAX_N = 8


def held_karp(m) -> tuple[Tour, float]:
    """Exact TSP by bitmask DP over subsets, O(2^n n^2); n <= 16."""
    d = as_matrix(m)
    n = d.shape[0]
    if n > HELD_KARP_MAX_N:
        raise GuardError(f"held_karp is limited to n <= {HELD_KARP_MAX_N}, got {n}")
    if n == 1:
        return Tour((0,)), 0.0
    full = (1 << n) - 1
    dp = np.full((full + 1, n), np.inf)
    pred = np.full((full + 1, n), -1, dtype=np.int8)
    dp[1, 0] = 0.0
    for mask in range(1, full + 1):
        if not mask & 1 or np.isinf(dp[mask]).all():
            continue
        ext = dp[mask][:, None] + d
        best = ext.min(axis=0)
        arg = ext.argmin(axis=0)
        for k in range(1, n):
            if mask >> k & 1:
                continue
            tgt = mask | (1 << k)
            if best[k] < dp[tgt, k]:
                dp[tgt, k] = best[k]
                pred[tgt, k] = arg[k]
    closing = dp[full] + d[:, 0]
    closing[0] = np.inf
    k = int(np.argmin(closing))
    weight = float(closing[k])
    order = []
    mask = full
    while k != -1:
        order.append(k)
        k, mask = int(pred[mask, k]), mask ^ (1 << k)
    order.reverse()
    return Tour(tuple(order)).canonical(), weight


def _subtree_intervals(tree: RootedTree):
    subs = []
    for v in range(tree.n):
        if v != tree.root and 1 < tree.size[v] < tree.n:
            subs.append([int(x) for x in tree.subtree(v)])
    return subs


def _contiguous(pos, sub, n) -> bool:
    ps = sorted(pos[x] for x in sub)
    gaps = sum(1 for a, b in zip(ps, ps[1:]) if b - a > 1)
    gaps += ps[0] + n - ps[-1] > 1
    return gaps <= 1


def brute_min_dt(tree: RootedTree, m) -> tuple[Tour, float]:
    """Exact minimum-weight double-tree shortcutting by filtering all
    (n-1)! tours through the subtree-contiguity test; n <= 9."""
    n = tree.n
    if n > BRUTE_DT_MAX_N:
        raise GuardError(f"brute_min_dt is limited to n <= {BRUTE_DT_MAX_N}, got {n}")
    d = as_matrix(m)
    if n == 1:
        return Tour((0,)), 0.0
    subs = _subtree_intervals(tree)
    pos = [0] * n
    best_w = np.inf
    best_order = None
    for perm in itertools.permutations(range(1, n)):
        order = (0,) + perm
        for idx, node in enumerate(order):
            pos[node] = idx
        if all(_contiguous(pos, sub, n) for sub in subs):
            w = sum(d[order[i - 1], order[i]] for i in range(n))
            if w < best_w:
                best_w = w
                best_order = order
    return Tour(best_order).canonical(), float(best_w)


def enumerate_dt_tours(tree: RootedTree) -> list[Tour]:
    """Every double-tree shortcutting of the tree, canonicalized and sorted;
    n <= 8.  Generated structurally: a subtree contributes one contiguous
    sub-path, built from its own node plus one sub-path per child, in every
    block order."""
    if tree.n > ENUMERATE_MAX_N:
        raise GuardError(
            f"enumerate_dt_tours is limited to n <= {ENUMERATE_MAX_N}, got {tree.n}")

    def paths(v: int) -> list[tuple[int, ...]]:
        kids = tree.children[v]
        if not kids:
            return [(v,)]
        blocks = [[(v,)]] + [paths(c) for c in kids]
        out = []
        for perm in itertools.permutations(blocks):
            for choice in itertools.product(*perm):
                out.append(sum(choice, ()))
        return out

    seen = set()
    tours = []
    blocks = [paths(c) for c in tree.children[tree.root]]
    for perm in itertools.permutations(blocks):
        for choice in itertools.product(*perm):
            tour = Tour((tree.root,) + sum(choice, ())).canonical()
            if tour.order not in seen:
                seen.add(tour.order)
                tours.append(tour)
    return sorted(tours, key=lambda t: t.order)
