"""Command-line interface.

Subcommands: ``gen`` (write an instance file + JSON sidecar), ``solve``
(run one method on one instance), ``sweep`` (ratio table over sizes, CSV plus
a PNG figure), ``render`` (SVG picture), ``selftest`` (quick internal
cross-checks).

Exit codes: 0 success, 1 bad usage or malformed input, 2 a size guard
refused the computation.  ``DTLAB_THREADS`` caps sweep worker threads.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .christofides import christofides_tour
from .doubletree import (Tour, depth_first_tour, format_tour, is_dt_shortcutting,
                         min_weight_dt_tour, parse_tour)
from .errors import GuardError, InputError
from .instances import (FAMILIES, InstanceBundle, gen_christofides_comb,
                        gen_comb, gen_star, gen_twin_trees)
from .metric import MetricInstance, verify_metric
from .oracle import HELD_KARP_MAX_N, brute_min_dt, enumerate_dt_tours, held_karp
from .render import write_svg
from .spanning import prim_mst
from .tsplib import read_sidecar, read_tsplib, sidecar_path, write_sidecar
from . import plots

METHODS = ("min-dt", "df-dt", "christofides", "held-karp")

CSV_HEADER = "family,metric,n,method,tour_weight,reference_weight,ratio,wall_time_s"


@dataclass
class ExperimentRecord:
    family: str
    metric: str
    n: int
    method: str
    tour_weight: float
    reference_weight: float
    ratio: float
    wall_time_s: float

    def csv_row(self) -> str:
        return ",".join([
            self.family, self.metric, str(self.n), self.method,
            f"{self.tour_weight:.12g}", f"{self.reference_weight:.12g}",
            f"{self.ratio:.12g}", f"{self.wall_time_s:.6f}",
        ])

    def json_obj(self) -> dict:
        return {
            "family": self.family, "metric": self.metric, "n": self.n,
            "method": self.method, "tour_weight": self.tour_weight,
            "reference_weight": self.reference_weight, "ratio": self.ratio,
            "wall_time_s": self.wall_time_s,
        }


def run_method(method: str, inst: MetricInstance, root: int = 0):
    """Run one tour-construction method; returns (tour, weight)."""
    if method == "min-dt":
        return min_weight_dt_tour(prim_mst(inst, root), inst)
    if method == "df-dt":
        tour = depth_first_tour(prim_mst(inst, root))
        return tour, tour.weight(inst)
    if method == "christofides":
        return christofides_tour(inst, root)
    if method == "held-karp":
        return held_karp(inst)
    raise InputError(f"unknown method {method!r} (choose from {', '.join(METHODS)})")


def _ratio(tour_weight: float, reference: float) -> float:
    if math.isnan(reference) or reference <= 0:
        return math.nan
    return tour_weight / reference


# -------------------------------------------------------------- gen

def _generate(family: str, args) -> InstanceBundle:
    def need(attr, flag):
        val = getattr(args, attr, None)
        if val is None:
            raise InputError(f"family {family!r} requires {flag}")
        return val

    if family == "comb":
        return gen_comb(need("n", "--n"), args.eps, args.metric)
    if family == "christofides-comb":
        return gen_christofides_comb(need("n", "--n"), args.eps, args.metric)
    if family == "twin-trees":
        return gen_twin_trees(need("k", "--k"), args.eps)
    if family == "star":
        return gen_star(need("n", "--n"), args.r_inner, args.r_outer, args.metric)
    raise InputError(f"unknown family {family!r} (choose from {', '.join(FAMILIES)})")


def _size_tag(bundle: InstanceBundle) -> str:
    if bundle.family == "twin-trees":
        return f"k{bundle.params['k']}"
    return f"n{bundle.params['n']}"


def cmd_gen(args) -> int:
    bundle = _generate(args.family, args)
    out = Path(args.out) if args.out else Path(f"{bundle.family}-{_size_tag(bundle)}.tsp")
    bundle.save(out)
    print(f"wrote {out} and {sidecar_path(out).name} "
          f"({bundle.n} nodes, {bundle.metric.kind} metric)")
    return 0


# -------------------------------------------------------------- solve

def _load_instance(path) -> tuple[MetricInstance, dict]:
    inst = read_tsplib(path)
    sidecar = read_sidecar(path) or {}
    return inst, sidecar


def _reference_weight(inst: MetricInstance, sidecar: dict, exact: bool) -> float:
    if exact:
        return held_karp(inst)[1]
    analytic = sidecar.get("analytic") or {}
    ref = analytic.get("reference_weight")
    if ref is not None:
        return float(ref)
    tour = sidecar.get("reference_tour")
    if tour is not None:
        return Tour(tuple(tour)).weight(inst)
    return math.nan


def cmd_solve(args) -> int:
    inst, sidecar = _load_instance(args.instance)
    root = args.root if args.root is not None else int(sidecar.get("root", 0))
    if not 0 <= root < inst.n:
        raise InputError(f"root {root} out of range for {inst.n} nodes")
    t0 = time.perf_counter()
    tour, weight = run_method(args.method, inst, root)
    wall = time.perf_counter() - t0
    reference = _reference_weight(inst, sidecar, args.exact)
    params = sidecar.get("params") or {}
    size = params.get("n", params.get("k", inst.n))
    rec = ExperimentRecord(
        family=sidecar.get("family", "unknown"), metric=inst.kind, n=size,
        method=args.method, tour_weight=weight, reference_weight=reference,
        ratio=_ratio(weight, reference), wall_time_s=wall)
    out = Path(args.out) if args.out else Path(args.instance).with_suffix(
        f".{args.method}.tour")
    out.write_text(format_tour(tour, weight))
    obj = rec.json_obj()
    obj["tour_file"] = str(out)
    print(json.dumps(obj, sort_keys=True))
    return 0


# -------------------------------------------------------------- sweep

def _worker_count() -> int:
    raw = os.environ.get("DTLAB_THREADS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise InputError(f"DTLAB_THREADS must be an integer, got {raw!r}") from None
    if workers < 1:
        raise InputError(f"DTLAB_THREADS must be >= 1, got {workers}")
    return workers


def _sweep_cell(bundle: InstanceBundle, method: str, exact: bool) -> ExperimentRecord:
    size = bundle.params.get("n", bundle.params.get("k"))
    try:
        reference = _reference_weight(bundle.metric, bundle.sidecar_payload(), exact)
        t0 = time.perf_counter()
        _, weight = run_method(method, bundle.metric, bundle.root)
        wall = time.perf_counter() - t0
        rec = ExperimentRecord(bundle.family, bundle.metric.kind, size, method,
                               weight, reference, _ratio(weight, reference), wall)
    except GuardError as exc:
        print(f"warning: {bundle.family} size {size} {method}: {exc}",
              file=sys.stderr)
        rec = ExperimentRecord(bundle.family, bundle.metric.kind, size, method,
                               math.nan, math.nan, math.nan, math.nan)
    return rec


def cmd_sweep(args) -> int:
    sizes = _parse_int_list(args.sizes, "--sizes")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise InputError(f"unknown method {m!r} (choose from {', '.join(METHODS)})")
    if not methods:
        raise InputError("--methods must name at least one method")

    bundles = []
    for s in sizes:
        ns = argparse.Namespace(n=s, k=s, eps=args.eps, metric=args.metric,
                                r_inner=args.r_inner, r_outer=args.r_outer)
        bundles.append(_generate(args.family, ns))

    cells = list(itertools.product(bundles, methods))
    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(
                lambda cell: _sweep_cell(cell[0], cell[1], args.exact), cells))
    else:
        records = [_sweep_cell(b, m, args.exact) for b, m in cells]
    records.sort(key=lambda r: (r.family, r.metric, r.n, r.method))

    out = Path(args.out)
    lines = [CSV_HEADER] + [r.csv_row() for r in records]
    out.write_text("\n".join(lines) + "\n")
    wrote = [str(out)]
    if not args.no_plot:
        png = out.with_suffix(".png")
        plots.plot_sweep(records, png)
        wrote.append(str(png))
    print(f"wrote {' and '.join(wrote)} ({len(records)} rows)")
    return 0


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"{flag} expects comma-separated integers, got {text!r}") from None
    if not vals:
        raise InputError(f"{flag} expects at least one integer")
    return vals


# -------------------------------------------------------------- render

def cmd_render(args) -> int:
    inst, sidecar = _load_instance(args.instance)
    layout = sidecar.get("layout")
    coords = np.asarray(layout, dtype=float) if layout is not None else inst.coords
    if coords is None:
        raise InputError("instance has no coordinates or sidecar layout to draw")
    mst_edges = sidecar.get("expected_mst")
    if mst_edges is None and not args.no_tree:
        root = int(sidecar.get("root", 0))
        mst_edges = prim_mst(inst, root).edges()
    tours = []
    for tf in args.tour or []:
        tours.append(parse_tour(Path(tf).read_text()))
    out = Path(args.out) if args.out else Path(args.instance).with_suffix(".svg")
    write_svg(out, coords,
              mst_edges=() if args.no_tree else (mst_edges or ()),
              extra_edges=sidecar.get("extra_edges") or (),
              tours=tours)
    print(f"wrote {out}")
    return 0


# -------------------------------------------------------------- selftest

def _random_points_instance(rng, n: int) -> MetricInstance:
    return MetricInstance.from_points(rng.uniform(0.0, 10.0, size=(n, 2)))


def _random_tree(rng, n: int):
    from .spanning import RootedTree
    parent = [0] * n
    for v in range(1, n):
        parent[v] = int(rng.integers(0, v))
    return RootedTree(parent, root=0)


def cmd_selftest(args) -> int:
    rng = np.random.default_rng(20240817)
    failures = 0

    def check(label: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'ok' if ok else 'FAIL'}  {label}")
        failures += 0 if ok else 1

    rounds = 5 if args.quick else 25
    ok = True
    for _ in range(rounds):
        inst = _random_points_instance(rng, int(rng.integers(5, 9)))
        tree = prim_mst(inst)
        tour, w = min_weight_dt_tour(tree, inst)
        bt, bw = brute_min_dt(tree, inst)
        ok &= abs(w - bw) <= 1e-9 and is_dt_shortcutting(tree, tour)
    check(f"optimal shortcutting matches brute force on {rounds} random instances", ok)

    ok = True
    for _ in range(5 if args.quick else 10):
        n = int(rng.integers(3, 7))
        tree = _random_tree(rng, n)
        cat = enumerate_dt_tours(tree)
        perms = {Tour((0,) + p).canonical()
                 for p in itertools.permutations(range(1, n))}
        filt = sorted((t for t in perms if is_dt_shortcutting(tree, t)),
                      key=lambda t: t.order)
        ok &= [t.order for t in cat] == [t.order for t in filt]
    check("tour enumeration matches the contiguity filter", ok)

    ok = True
    for _ in range(3 if args.quick else 5):
        inst = _random_points_instance(rng, 6)
        _, hk = held_karp(inst)
        best = min(Tour((0,) + p).weight(inst)
                   for p in itertools.permutations(range(1, 6)))
        ok &= abs(hk - best) <= 1e-9
    check("exact solver matches full permutation search", ok)

    ok = True
    for bundle in (gen_comb(3), gen_christofides_comb(4), gen_twin_trees(2),
                   gen_star(2), gen_star(2, metric="hexagonal")):
        report = verify_metric(bundle.metric)
        tree = prim_mst(bundle.metric, bundle.root)
        ref_w = bundle.reference_tour.weight(bundle.metric)
        _, mdt = min_weight_dt_tour(tree, bundle.metric)
        ok &= report.ok
        ok &= sorted(tuple(sorted(e)) for e in tree.edges()) == bundle.expected_mst
        ok &= abs(ref_w - bundle.analytic["reference_weight"]) <= 1e-9
        ok &= mdt <= ref_w + 1e-9
    check("generated families: metric, expected tree, reference tour", ok)

    if failures:
        print(f"selftest: {failures} check(s) failed")
        return 1
    print("selftest: all checks passed")
    return 0


# -------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dtlab",
        description="Tree-doubling tour construction lab: generators, "
                    "solvers and experiment sweeps.")
    sub = p.add_subparsers(dest="command", metavar="command")

    g = sub.add_parser("gen", help="generate an instance file plus JSON sidecar")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--n", type=int, help="size parameter (comb, star)")
    g.add_argument("--k", type=int, help="tree height (twin-trees)")
    g.add_argument("--eps", type=float, default=None)
    g.add_argument("--metric", choices=("euclidean", "hexagonal"),
                   default="euclidean")
    g.add_argument("--r-inner", type=float, default=0.5, dest="r_inner")
    g.add_argument("--r-outer", type=float, default=1.0, dest="r_outer")
    g.add_argument("--out", default=None, help="output .tsp path")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run one method on one instance")
    s.add_argument("instance")
    s.add_argument("--method", choices=METHODS, default="min-dt")
    s.add_argument("--root", type=int, default=None)
    s.add_argument("--exact", action="store_true",
                   help=f"compare against the exact optimum (n <= {HELD_KARP_MAX_N})")
    s.add_argument("--out", default=None, help="tour file path")
    s.set_defaults(func=cmd_solve)

    w = sub.add_parser("sweep", help="ratio table over sizes -> CSV + PNG")
    w.add_argument("--family", choices=FAMILIES, required=True)
    w.add_argument("--sizes", required=True,
                   help="comma-separated n values (k values for twin-trees)")
    w.add_argument("--methods", default="min-dt")
    w.add_argument("--metric", choices=("euclidean", "hexagonal"),
                   default="euclidean")
    w.add_argument("--eps", type=float, default=None)
    w.add_argument("--r-inner", type=float, default=0.5, dest="r_inner")
    w.add_argument("--r-outer", type=float, default=1.0, dest="r_outer")
    w.add_argument("--exact", action="store_true")
    w.add_argument("--out", default="sweep.csv")
    w.add_argument("--no-plot", action="store_true")
    w.set_defaults(func=cmd_sweep)

    r = sub.add_parser("render", help="draw an instance (and tours) as SVG")
    r.add_argument("instance")
    r.add_argument("--tour", action="append", help="tour file (repeatable)")
    r.add_argument("--no-tree", action="store_true")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_render)

    t = sub.add_parser("selftest", help="run quick internal cross-checks")
    t.add_argument("--quick", action="store_true")
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    if getattr(args, "func", None) is None:
        parser.print_help()
        return 1
    try:
        return int(args.func(args) or 0)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
