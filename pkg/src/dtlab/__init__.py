"""Tree-doubling tour construction lab.

Build a minimum spanning tree, double it, and shortcut the Euler walk into a
Hamiltonian tour -- either greedily in depth-first order or optimally over
all shortcuttings that keep every subtree contiguous on the cycle.  Ships
exact baselines (Held-Karp, brute-force shortcutting, Christofides), four
adversarial instance generators, TSPLIB-style I/O, an SVG renderer and a
sweep CLI that tabulates approximation ratios.
"""

from .christofides import (Multigraph, christofides_tour, euler_tour,
                           exact_min_matching, odd_degree_nodes)
from .doubletree import (DtPathTable, Tour, depth_first_tour,
                         double_tree_euler_walk, format_tour,
                         is_dt_shortcutting, min_weight_dt_tour, parse_tour,
                         tour_weight)
from .errors import DtlabError, GuardError, InputError, ParseError
from .instances import (FAMILIES, InstanceBundle, gen_christofides_comb,
                        gen_comb, gen_star, gen_twin_trees)
from .metric import (MetricInstance, MetricReport, Point2D, WeightedGraph,
                     as_matrix, euclidean_distance, hexagonal_distance,
                     hexagonal_gauge, shortest_path_metric, verify_metric)
from .oracle import (BRUTE_DT_MAX_N, ENUMERATE_MAX_N, HELD_KARP_MAX_N,
                     brute_min_dt, enumerate_dt_tours, held_karp)
from .render import render_svg, write_svg
from .spanning import (RootedTree, dump_tree, max_child_degree, prim_mst,
                       reroot, tree_weight)
from .tsplib import read_sidecar, read_tsplib, write_sidecar, write_tsplib

__version__ = "0.1.0"

__all__ = [
    "BRUTE_DT_MAX_N", "DtlabError", "DtPathTable", "ENUMERATE_MAX_N",
    "FAMILIES", "GuardError", "HELD_KARP_MAX_N", "InputError",
    "InstanceBundle", "MetricInstance", "MetricReport", "Multigraph",
    "ParseError", "Point2D", "RootedTree", "Tour", "WeightedGraph",
    "as_matrix", "brute_min_dt", "christofides_tour", "depth_first_tour",
    "double_tree_euler_walk", "dump_tree", "enumerate_dt_tours",
    "euclidean_distance", "euler_tour", "exact_min_matching", "format_tour",
    "gen_christofides_comb", "gen_comb", "gen_star", "gen_twin_trees",
    "held_karp", "hexagonal_distance", "hexagonal_gauge",
    "is_dt_shortcutting", "max_child_degree", "min_weight_dt_tour",
    "odd_degree_nodes", "parse_tour", "prim_mst", "read_sidecar",
    "read_tsplib", "render_svg", "reroot", "shortest_path_metric",
    "tour_weight", "tree_weight", "verify_metric", "write_sidecar",
    "write_svg", "write_tsplib",
]
