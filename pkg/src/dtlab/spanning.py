"""Minimum spanning trees and the rooted-tree bookkeeping built on them.

Tie-breaking in :func:`prim_mst` is fully deterministic so that every run
(and every golden file) sees the same tree: among equal-weight frontier
edges, the one with the smallest (weight, child index, parent index)
lexicographic key is attached.  Several generated instances rely on this
policy to pin down which of several equal-weight spanning trees is built.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .metric import as_matrix


class RootedTree:
    """Rooted tree over nodes 0..n-1 with children kept in ascending order.

    ``parent[root] == root``.  Exposes the preorder sequence plus, per node,
    its preorder position and subtree size, so any subtree reads off
    ``preorder[pos[v]:pos[v]+size[v]]``.
    """

    def __init__(self, parent, root: int):
        parent = np.asarray(parent, dtype=np.int64)
        n = parent.shape[0]
        if not 0 <= root < n:
            raise InputError(f"root {root} out of range")
        if parent[root] != root:
            raise InputError("root must be its own parent")
        children: list[list[int]] = [[] for _ in range(n)]
        for v in range(n):
            if v == root:
                continue
            p = int(parent[v])
            if not 0 <= p < n or p == v:
                raise InputError(f"node {v} has invalid parent {p}")
            children[p].append(v)
        order = np.empty(n, dtype=np.int64)
        pos = np.full(n, -1, dtype=np.int64)
        stack = [root]
        idx = 0
        while stack:
            v = stack.pop()
            order[idx] = v
            pos[v] = idx
            idx += 1
            stack.extend(reversed(children[v]))  # smallest child pops first
        if idx != n:
            raise InputError("parent array does not describe a tree")
        size = np.ones(n, dtype=np.int64)
        for v in order[:0:-1]:  # reverse preorder, root excluded
            size[parent[v]] += size[v]
        self.n = n
        self.root = int(root)
        self.parent = parent
        self.children = children
        self.preorder = order
        self.pos = pos
        self.size = size

    def edges(self) -> list[tuple[int, int]]:
        return [(int(self.parent[v]), int(v)) for v in range(self.n)
                if v != self.root]

    def subtree(self, v: int) -> np.ndarray:
        """Nodes of v's subtree, in preorder."""
        p = int(self.pos[v])
        return self.preorder[p:p + int(self.size[v])]

    def max_child_degree(self) -> int:
        return max((len(c) for c in self.children), default=0)


def prim_mst(m, root: int = 0, tie_break: str = "lex") -> RootedTree:
    """Dense-matrix Prim, O(n^2), rooted at ``root``.

    ``tie_break='lex'`` (the only policy) attaches, among minimum-weight
    frontier edges, the smallest child index, and for that child the
    smallest parent index achieving the minimum.
    """
    if tie_break != "lex":
        raise InputError(f"unknown tie_break policy {tie_break!r}")
    d = as_matrix(m)
    n = d.shape[0]
    if d.ndim != 2 or d.shape != (n, n) or n < 1:
        raise InputError("need a square, nonempty distance matrix")
    if not 0 <= root < n:
        raise InputError(f"root {root} out of range")
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    best[root] = 0.0
    for _ in range(n):
        u = int(np.argmin(np.where(in_tree, np.inf, best)))
        in_tree[u] = True
        row = d[u]
        outside = ~in_tree
        update = outside & ((row < best) | ((row == best) & (u < parent)))
        parent[update] = u
        best[update] = row[update]
    parent[root] = root
    return RootedTree(parent, root)


def tree_weight(tree: RootedTree, m) -> float:
    d = as_matrix(m)
    return float(sum(d[p, v] for p, v in tree.edges()))


def max_child_degree(tree: RootedTree) -> int:
    return tree.max_child_degree()


def reroot(tree: RootedTree, new_root: int) -> RootedTree:
    """Same edge set, reparented away from ``new_root``."""
    adj: list[list[int]] = [[] for _ in range(tree.n)]
    for p, v in tree.edges():
        adj[p].append(v)
        adj[v].append(p)
    parent = np.full(tree.n, -1, dtype=np.int64)
    parent[new_root] = new_root
    stack = [new_root]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if parent[v] == -1:
                parent[v] = u
                stack.append(v)
    return RootedTree(parent, new_root)


def dump_tree(tree: RootedTree) -> str:
    """One ``node parent`` pair per line (the root lists itself)."""
    return "".join(f"{v} {int(tree.parent[v])}\n" for v in range(tree.n))
