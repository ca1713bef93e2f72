"""Double-tree tours over a rooted spanning tree.

Doubling every edge of a spanning tree gives an Eulerian multigraph, and
shortcutting repeated nodes out of an Euler walk yields a Hamiltonian tour.
The family of tours obtainable this way has a clean characterization: a tour
belongs to it iff every subtree occupies one contiguous arc of the tour
cycle.  :func:`depth_first_tour` returns the canonical member (preorder,
children in ascending index order); :func:`min_weight_dt_tour` returns the
minimum-weight member via dynamic programming that merges, bottom-up, per
subtree, a table of optimal Hamiltonian sub-path weights indexed by the two
path endpoints.

Endpoint tables come in two shapes.  If a subtree root has at most one
child, every admissible sub-path has the subtree root as an endpoint, so a
vector indexed by the other endpoint suffices; with two or more children the
full symmetric endpoint-pair matrix is kept.  Tour reconstruction re-derives
each argmin with the same floating-point expressions used during the forward
pass, so it never needs stored predecessor links.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .errors import GuardError, InputError
from .metric import as_matrix
from .spanning import RootedTree


@dataclass(frozen=True)
class Tour:
    """A Hamiltonian cycle over nodes 0..n-1, stored as a visiting order."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if not order or sorted(order) != list(range(len(order))):
            raise InputError("tour must visit each of 0..n-1 exactly once")
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return len(self.order)

    def weight(self, m) -> float:
        d = as_matrix(m)
        idx = np.array(self.order, dtype=np.int64)
        return float(d[idx, np.roll(idx, -1)].sum())

    def canonical(self) -> "Tour":
        """Rotate to start at node 0, then keep the lexicographically
        smaller of the two directions."""
        i = self.order.index(0)
        fwd = self.order[i:] + self.order[:i]
        rev = (fwd[0],) + tuple(reversed(fwd[1:]))
        return Tour(min(fwd, rev))


def format_tour(tour: Tour, weight: float | None = None) -> str:
    line = " ".join(str(v) for v in tour.order)
    if weight is not None:
        line += f"  # weight={weight:.12g}"
    return line + "\n"


def parse_tour(text: str) -> Tour:
    tokens = text.split("#", 1)[0].split()
    try:
        return Tour(tuple(int(t) for t in tokens))
    except ValueError as exc:
        raise InputError(f"bad tour token: {exc}") from None


def tour_weight(tour: Tour, m) -> float:
    return tour.weight(m)


def double_tree_euler_walk(tree: RootedTree) -> list[int]:
    """Closed walk on the doubled tree: every edge twice, children in
    ascending order.  Length 2n-1, starts and ends at the root."""
    walk = [tree.root]
    stack = [(tree.root, iter(tree.children[tree.root]))]
    while stack:
        v, it = stack[-1]
        c = next(it, None)
        if c is None:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
        else:
            walk.append(c)
            stack.append((c, iter(tree.children[c])))
    return walk


def depth_first_tour(tree: RootedTree) -> Tour:
    """Shortcut of the Euler walk to first occurrences, i.e. preorder."""
    return Tour(tuple(int(v) for v in tree.preorder))


def is_dt_shortcutting(tree: RootedTree, tour: Tour) -> bool:
    """True iff every subtree occupies one contiguous arc of the tour."""
    n = tree.n
    if tour.n != n:
        raise InputError("tour and tree disagree on the number of nodes")
    pos_in_tour = np.empty(n, dtype=np.int64)
    pos_in_tour[np.array(tour.order, dtype=np.int64)] = np.arange(n)
    for v in range(n):
        if v == tree.root or tree.size[v] <= 1:
            continue
        p = np.sort(pos_in_tour[tree.subtree(v)])
        gaps = int((np.diff(p) > 1).sum()) + int(p[0] + n - p[-1] > 1)
        if gaps > 1:
            return False
    return True


@dataclass
class DtPathTable:
    """Optimal sub-path weights for one subtree, indexed by endpoints.

    ``nodes`` lists the subtree in preorder; nodes[0] is its root.  Exactly
    one of ``vec`` (root is always a path endpoint; entry i is the weight of
    the best path root..nodes[i]) or ``mat`` (full symmetric endpoint-pair
    matrix) is set.
    """

    nodes: np.ndarray
    vec: np.ndarray | None = None
    mat: np.ndarray | None = None


def _enter_cost(table: DtPathTable, dv: np.ndarray) -> np.ndarray:
    """min over entry a of dv[a] + path(a -> x), for every exit x."""
    if table.mat is not None:
        return (dv[:, None] + table.mat).min(axis=0)
    out = dv[0] + table.vec
    out[0] = (dv + table.vec).min()
    return out


def _enter_argmin(table: DtPathTable, dv: np.ndarray, x: int) -> int:
    """Entry index realizing _enter_cost(table, dv)[x]."""
    if table.mat is not None:
        return int(np.argmin(dv + table.mat[:, x]))
    if x == 0:
        return int(np.argmin(dv + table.vec))
    return 0


def _table_row(table: DtPathTable, i: int) -> np.ndarray:
    """Row i of the (implied) symmetric endpoint-pair matrix."""
    if table.mat is not None:
        return table.mat[i].copy()
    s = len(table.vec)
    if s == 1:
        return np.zeros(1)
    if i == 0:
        return table.vec.copy()
    row = np.full(s, np.inf)
    row[0] = table.vec[i]
    return row


def _subtree_blocks(tree: RootedTree, d, tables, v):
    """Blocks of v's subtree ({v} plus one block per child), in the local
    preorder coordinates of the subtree."""
    nodes = tree.subtree(v)
    base = int(tree.pos[v])
    blocks = [DtPathTable(nodes[:1], vec=np.zeros(1))]
    slices = [slice(0, 1)]
    for c in tree.children[v]:
        lo = int(tree.pos[c]) - base
        slices.append(slice(lo, lo + int(tree.size[c])))
        blocks.append(tables[c])
    blk_of = np.empty(len(nodes), dtype=np.int64)
    for b, sl in enumerate(slices):
        blk_of[sl] = b
    return blocks, slices, blk_of, d[np.ix_(nodes, nodes)]


def _block_dp(dsub, blocks, slices, seeds):
    """Subset DP over blocks.  f[mask][x] is the weight of the best path
    that covers exactly the blocks in mask, starts as dictated by the seed,
    and ends at local node x (finite only when x's block was laid last).
    Blocks stay contiguous, so a path endpoint always sits in the last
    block, which is what makes this state sufficient.
    """
    full = (1 << len(blocks)) - 1
    f: list[np.ndarray | None] = [None] * (full + 1)
    for mask, vec in seeds:
        f[mask] = vec
    for mask in range(1, full):
        fm = f[mask]
        if fm is None:
            continue
        for b, (tb, sl) in enumerate(zip(blocks, slices)):
            bit = 1 << b
            if mask & bit:
                continue
            arrive = (fm[:, None] + dsub[:, sl]).min(axis=0)
            ext = _enter_cost(tb, arrive)
            tgt = f[mask | bit]
            if tgt is None:
                tgt = np.full(len(fm), np.inf)
                f[mask | bit] = tgt
            np.minimum(tgt[sl], ext, out=tgt[sl])
    return f


def _backtrack(f, dsub, blocks, slices, blk_of, x, resolve_seed):
    """Walk a _block_dp table backwards from final endpoint x.  Returns
    (block, entry, exit) legs in visit order; entry/exit are local to the
    block."""
    mask = (1 << len(blocks)) - 1
    legs = []
    while True:
        b = int(blk_of[x])
        sl = slices[b]
        xl = x - sl.start
        prev = mask ^ (1 << b)
        if prev == 0:
            legs.append((b, resolve_seed(b, xl), xl))
            break
        fp = f[prev]
        arrive = (fp[:, None] + dsub[:, sl]).min(axis=0)
        e = _enter_argmin(blocks[b], arrive, xl)
        legs.append((b, e, xl))
        x = int(np.argmin(fp + dsub[:, sl.start + e]))
        mask = prev
    legs.reverse()
    return legs


def _build_tables(tree: RootedTree, d):
    tables: list[DtPathTable | None] = [None] * tree.n
    for v in tree.preorder[::-1]:
        v = int(v)
        if v == tree.root:
            continue
        kids = tree.children[v]
        nodes = tree.subtree(v)
        if not kids:
            tables[v] = DtPathTable(nodes, vec=np.zeros(1))
        elif len(kids) == 1:
            tc = tables[kids[0]]
            vec = np.empty(len(nodes))
            vec[0] = np.inf
            vec[1:] = _enter_cost(tc, d[v, tc.nodes])
            tables[v] = DtPathTable(nodes, vec=vec)
        elif len(kids) == 2:
            tables[v] = _two_child_table(tree, d, tables, v)
        else:
            tables[v] = _multi_child_table(tree, d, tables, v)
    return tables


def _two_child_table(tree, d, tables, v):
    t1, t2 = (tables[c] for c in tree.children[v])
    s1, s2 = len(t1.nodes), len(t2.nodes)
    s = 1 + s1 + s2
    sl1, sl2 = slice(1, 1 + s1), slice(1 + s1, s)
    dv1, dv2 = d[v, t1.nodes], d[v, t2.nodes]
    m12 = d[np.ix_(t1.nodes, t2.nodes)]
    g1 = _enter_cost(t1, dv1)  # best (x .. a) + edge a-v, per x
    g2 = _enter_cost(t2, dv2)
    mat = np.full((s, s), np.inf)
    mat[sl1, sl2] = g1[:, None] + g2[None, :]        # block1 .. v .. block2
    mat[0, sl2] = _enter_cost(t2, (g1[:, None] + m12).min(axis=0))
    mat[0, sl1] = _enter_cost(t1, (g2[:, None] + m12.T).min(axis=0))
    return DtPathTable(tree.subtree(v), mat=np.minimum(mat, mat.T))


def _multi_child_table(tree, d, tables, v):
    blocks, slices, blk_of, dsub = _subtree_blocks(tree, d, tables, v)
    s = dsub.shape[0]
    full = (1 << len(blocks)) - 1
    mat = np.empty((s, s))
    for i in range(s):
        b0 = int(blk_of[i])
        vec = np.full(s, np.inf)
        vec[slices[b0]] = _table_row(blocks[b0], i - slices[b0].start)
        f = _block_dp(dsub, blocks, slices, [(1 << b0, vec)])
        mat[i] = f[full]
    return DtPathTable(tree.subtree(v), mat=mat)


def _extract_path(tree, d, tables, c, i, j) -> list[int]:
    """Optimal sub-path of subtree(c) between local endpoints i and j
    (0 is c itself), re-deriving the argmins of the forward pass."""
    out: list[int] = []
    while True:
        kids = tree.children[c]
        if not kids:
            out.append(c)
            return out
        if len(kids) == 1:
            if j == 0:
                out.extend(reversed(_extract_path(tree, d, tables, c, 0, i)))
                return out
            assert i == 0, "a chain sub-path must end at its subtree root"
            u = kids[0]
            out.append(c)
            # descend; the entry is 0 except when the exit is the child root
            e = _enter_argmin(tables[u], d[c, tables[u].nodes], j - 1)
            c, i, j = u, e, j - 1
            continue
        break
    if j == 0:
        out.extend(reversed(_extract_path(tree, d, tables, c, 0, i)))
        return out
    kids = tree.children[c]
    if len(kids) == 2:
        u1, u2 = kids
        t1, t2 = tables[u1], tables[u2]
        o2 = 1 + len(t1.nodes)
        dv1, dv2 = d[c, t1.nodes], d[c, t2.nodes]
        if i == 0:
            if j >= o2:  # c, block1, block2
                g1 = _enter_cost(t1, dv1)
                m12 = d[np.ix_(t1.nodes, t2.nodes)]
                e2 = _enter_argmin(t2, (g1[:, None] + m12).min(axis=0), j - o2)
                b1 = int(np.argmin(g1 + m12[:, e2]))
                a1 = _enter_argmin(t1, dv1, b1)
                out.append(c)
                out.extend(_extract_path(tree, d, tables, u1, a1, b1))
                out.extend(_extract_path(tree, d, tables, u2, e2, j - o2))
            else:        # c, block2, block1
                g2 = _enter_cost(t2, dv2)
                m21 = d[np.ix_(t2.nodes, t1.nodes)]
                e1 = _enter_argmin(t1, (g2[:, None] + m21).min(axis=0), j - 1)
                b2 = int(np.argmin(g2 + m21[:, e1]))
                a2 = _enter_argmin(t2, dv2, b2)
                out.append(c)
                out.extend(_extract_path(tree, d, tables, u2, a2, b2))
                out.extend(_extract_path(tree, d, tables, u1, e1, j - 1))
            return out
        if i >= o2:  # normalize to i in block1, j in block2
            out.extend(reversed(_extract_path(tree, d, tables, c, j, i)))
            return out
        assert j >= o2, "endpoints inside one child block are infeasible"
        a1 = _enter_argmin(t1, dv1, i - 1)   # block1 from i out to v ...
        e2 = _enter_argmin(t2, dv2, j - o2)  # ... then into block2 down to j
        out.extend(reversed(_extract_path(tree, d, tables, u1, a1, i - 1)))
        out.append(c)
        out.extend(_extract_path(tree, d, tables, u2, e2, j - o2))
        return out
    # three or more children: rerun the block DP from this exact start
    blocks, slices, blk_of, dsub = _subtree_blocks(tree, d, tables, c)
    b0 = int(blk_of[i])
    vec = np.full(len(blk_of), np.inf)
    vec[slices[b0]] = _table_row(blocks[b0], i - slices[b0].start)
    f = _block_dp(dsub, blocks, slices, [(1 << b0, vec)])
    legs = _backtrack(f, dsub, blocks, slices, blk_of, j,
                      lambda b, xl: i - slices[b].start)
    for b, e, xl in legs:
        if b == 0:
            out.append(c)
        else:
            out.extend(_extract_path(tree, d, tables, kids[b - 1], e, xl))
    return out


def min_weight_dt_tour(tree: RootedTree, m, degree_guard: int = 12):
    """Minimum-weight tour among all shortcuttings of the doubled tree.

    Returns (tour, weight).  Refuses trees whose maximum child count
    exceeds ``degree_guard``: merging a node's child blocks is exponential
    in the child count.
    """
    d = as_matrix(m)
    n = tree.n
    if d.shape != (n, n):
        raise InputError("matrix size does not match the tree")
    deg = tree.max_child_degree()
    if deg > degree_guard:
        v = max(range(n), key=lambda u: len(tree.children[u]))
        raise GuardError(
            f"node {v} has {deg} children; block merging is exponential in "
            f"the child count (guard {degree_guard})")
    if n == 1:
        return Tour((0,)), 0.0
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 3 * n + 200))

    tables = _build_tables(tree, d)
    pre = tree.preorder
    dloc = d[np.ix_(pre, pre)]
    kids = tree.children[tree.root]
    blocks = [tables[c] for c in kids]
    slices = [slice(int(tree.pos[c]), int(tree.pos[c] + tree.size[c]))
              for c in kids]
    blk_of = np.empty(n, dtype=np.int64)
    blk_of[0] = -1
    seeds = []
    for b, sl in enumerate(slices):
        blk_of[sl] = b
        vec = np.full(n, np.inf)
        vec[sl] = _enter_cost(blocks[b], dloc[0, sl])
        seeds.append((1 << b, vec))
    f = _block_dp(dloc, blocks, slices, seeds)
    closing = f[(1 << len(kids)) - 1] + dloc[:, 0]
    x = int(np.argmin(closing))
    weight = float(closing[x])

    legs = _backtrack(f, dloc, blocks, slices, blk_of, x,
                      lambda b, xl: _enter_argmin(blocks[b], dloc[0, slices[b]], xl))
    order = [int(pre[0])]
    for b, e, xl in legs:
        order.extend(_extract_path(tree, d, tables, kids[b], e, xl))
    tour = Tour(tuple(order)).canonical()
    assert is_dt_shortcutting(tree, tour), "reconstructed tour broke contiguity"
    assert abs(tour.weight(d) - weight) <= 1e-6 * max(1.0, abs(weight)), \
        "reconstructed tour weight disagrees with the DP optimum"
    return tour, weight
