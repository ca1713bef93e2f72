import itertools
import math

import numpy as np
import pytest

import dtlab
from support import random_instance, random_tree


def perm_optimum(inst) -> float:
    return min(dtlab.Tour((0,) + p).weight(inst)
               for p in itertools.permutations(range(1, inst.n)))


def test_held_karp_frozen_square_plus_center():
    inst = dtlab.MetricInstance.from_points(
        [(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)])
    tour, w = dtlab.held_karp(inst)
    assert w == pytest.approx(3.0 + math.sqrt(2.0), abs=1e-12)
    assert tour.order == (0, 1, 2, 3, 4)


def test_held_karp_matches_permutation_search(rng):
    for _ in range(12):
        n = int(rng.integers(2, 9))
        inst = random_instance(rng, n)
        tour, w = dtlab.held_karp(inst)
        assert tour.n == n
        assert w == pytest.approx(perm_optimum(inst) if n > 1 else 0.0, abs=1e-9)
        assert tour.weight(inst) == pytest.approx(w, abs=1e-9)


def test_held_karp_size_guard(rng):
    inst = random_instance(rng, 17)
    with pytest.raises(dtlab.GuardError, match="held_karp"):
        dtlab.held_karp(inst)


def test_brute_min_dt_size_guard(rng):
    inst = random_instance(rng, 10)
    tree = dtlab.prim_mst(inst)
    with pytest.raises(dtlab.GuardError):
        dtlab.brute_min_dt(tree, inst)


def test_brute_min_dt_convex_path_tree():
    # points in strictly convex position: the hull order is the unique
    # optimum over all tours, and it is one of the path's 4 shortcuttings
    inst = dtlab.MetricInstance.from_points([(i, i * i) for i in range(5)])
    tree = dtlab.RootedTree([0, 0, 1, 2, 3], root=0)  # a path
    tour, w = dtlab.brute_min_dt(tree, inst)
    assert tour.order == (0, 1, 2, 3, 4)
    assert w == pytest.approx(dtlab.Tour((0, 1, 2, 3, 4)).weight(inst), abs=1e-12)


def test_enumerate_dt_tours_counts():
    # a path admits 2^(n-3) shortcuttings for n >= 4, a star all (n-1)!/2
    for n, count in ((4, 2), (5, 4), (6, 8)):
        tree = dtlab.RootedTree([0] + list(range(n - 1)), root=0)
        assert len(dtlab.enumerate_dt_tours(tree)) == count
    for n in (4, 5):
        tree = dtlab.RootedTree([0] * n, root=0)
        assert len(dtlab.enumerate_dt_tours(tree)) == math.factorial(n - 1) // 2


def test_enumerate_dt_tours_singleton_and_guard():
    assert [t.order for t in dtlab.enumerate_dt_tours(dtlab.RootedTree([0], 0))] == [(0,)]
    with pytest.raises(dtlab.GuardError):
        dtlab.enumerate_dt_tours(dtlab.RootedTree([0] * 9, 0))


def test_enumerate_dt_tours_equals_contiguity_filter(rng):
    for _ in range(15):
        n = int(rng.integers(3, 8))
        tree = random_tree(rng, n)
        got = [t.order for t in dtlab.enumerate_dt_tours(tree)]
        perms = {dtlab.Tour((0,) + p).canonical()
                 for p in itertools.permutations(range(1, n))}
        want = sorted(t.order for t in perms if dtlab.is_dt_shortcutting(tree, t))
        assert got == want
        assert len(set(got)) == len(got)  # canonical forms, no duplicates


def test_enumerated_tours_cover_brute_optimum(rng):
    inst = random_instance(rng, 7)
    tree = dtlab.prim_mst(inst)
    tours = dtlab.enumerate_dt_tours(tree)
    best = min(t.weight(inst) for t in tours)
    _, bw = dtlab.brute_min_dt(tree, inst)
    assert best == pytest.approx(bw, abs=1e-12)
