import itertools
import math

import numpy as np
import pytest

import dtlab
from support import random_instance, random_tree


def brute_matching(nodes, matrix) -> float:
    nodes = sorted(nodes)
    if not nodes:
        return 0.0
    first, rest = nodes[0], nodes[1:]
    best = math.inf
    for i, partner in enumerate(rest):
        w = matrix[first, partner] + brute_matching(rest[:i] + rest[i + 1:], matrix)
        best = min(best, w)
    return best


def test_odd_degree_nodes_frozen_cases():
    path = dtlab.RootedTree([0, 0, 1, 2], root=0)
    assert dtlab.odd_degree_nodes(path) == [0, 3]
    star = dtlab.RootedTree([0, 0, 0, 0, 0], root=0)
    assert dtlab.odd_degree_nodes(star) == [1, 2, 3, 4]


def test_odd_degree_nodes_always_even_count(rng):
    for _ in range(20):
        tree = random_tree(rng, int(rng.integers(2, 30)))
        assert len(dtlab.odd_degree_nodes(tree)) % 2 == 0


def test_exact_min_matching_frozen():
    inst = dtlab.MetricInstance.from_points([(0, 0), (1, 0), (2, 0), (9, 0)])
    assert dtlab.exact_min_matching([0, 1, 2, 3], inst) == [(0, 1), (2, 3)]
    assert dtlab.exact_min_matching([], inst) == []
    assert dtlab.exact_min_matching([1, 3], inst) == [(1, 3)]


def test_exact_min_matching_matches_brute_force(rng):
    for size in (4, 6, 8):
        inst = random_instance(rng, 12)
        nodes = sorted(map(int, rng.choice(12, size=size, replace=False)))
        pairs = dtlab.exact_min_matching(nodes, inst)
        got = sum(inst.matrix[u, v] for u, v in pairs)
        assert sorted(v for p in pairs for v in p) == nodes
        assert got == pytest.approx(brute_matching(nodes, inst.matrix), abs=1e-9)


def test_exact_min_matching_errors(rng):
    inst = random_instance(rng, 24)
    with pytest.raises(dtlab.InputError):
        dtlab.exact_min_matching([0, 1, 2], inst)
    with pytest.raises(dtlab.GuardError, match="matching too large"):
        dtlab.exact_min_matching(list(range(20)), inst)


def test_multigraph_degrees_and_validation():
    g = dtlab.Multigraph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 0)
    g.add_edge(1, 2)
    assert g.degrees() == [2, 3, 1]
    assert g.edge_multiset() == [(0, 1), (0, 1), (1, 2)]
    with pytest.raises(dtlab.InputError):
        g.add_edge(0, 0)
    with pytest.raises(dtlab.InputError):
        g.add_edge(0, 7)


def test_euler_tour_frozen_bowtie():
    g = dtlab.Multigraph(5)
    for u, v in [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]:
        g.add_edge(u, v)
    assert dtlab.euler_tour(g) == [0, 1, 2, 0, 3, 4, 0]


def test_euler_tour_preserves_edge_multiset(rng):
    for _ in range(10):
        n = int(rng.integers(3, 10))
        g = dtlab.Multigraph(n)
        nodes = list(range(n))
        for _ in range(4):  # union of closed walks keeps all degrees even
            cyc = list(map(int, rng.permutation(n)))
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                g.add_edge(a, b)
        walk = dtlab.euler_tour(g)
        assert walk[0] == walk[-1]
        seen = sorted(tuple(sorted(p)) for p in zip(walk, walk[1:]))
        assert seen == g.edge_multiset()


def test_euler_tour_rejects_odd_degrees_and_disconnection():
    g = dtlab.Multigraph(2)
    g.add_edge(0, 1)
    with pytest.raises(dtlab.InputError, match="odd"):
        dtlab.euler_tour(g)
    g = dtlab.Multigraph(6)
    for u, v in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]:
        g.add_edge(u, v)
    with pytest.raises(dtlab.InputError, match="connected"):
        dtlab.euler_tour(g)


def test_christofides_within_three_halves_of_optimum(rng):
    for _ in range(10):
        n = int(rng.integers(4, 13))
        inst = random_instance(rng, n)
        tour, w = dtlab.christofides_tour(inst)
        _, opt = dtlab.held_karp(inst)
        assert sorted(tour.order) == list(range(n))
        assert opt - 1e-9 <= w <= 1.5 * opt + 1e-9


def test_christofides_two_nodes():
    inst = dtlab.MetricInstance.from_points([(0, 0), (3, 4)])
    tour, w = dtlab.christofides_tour(inst)
    assert tour.order == (0, 1) and w == pytest.approx(10.0, abs=1e-12)


def test_christofides_comb_frozen_weight():
    bundle = dtlab.gen_christofides_comb(4)
    _, w = dtlab.christofides_tour(bundle.metric, bundle.root)
    assert w == pytest.approx(9.0 + math.sqrt(17.0), abs=1e-9)
    assert w == pytest.approx(bundle.analytic["christofides_weight"], rel=1e-12)
