"""Benchmark CLI: graph generation, single runs, and median sweeps.

Subcommands::

    gen   --n N --seed S [--dist uniform01] --out graph.csv
    run   --algo A --graph graph.csv (--rho R | --epsilon E)
          --sensitivity D --seed S --out results.csv
    bench --algos a,b,c --n-list 256,512 --reps 5 --rho R
          --sensitivity D --seed S --out medians.csv

Exit codes: 0 ok, 2 usage error, 3 data error. ``DPMST_THREADS`` caps the
number of bench worker threads (default 1). Wall-clock columns are
machine-dependent; instrumentation counters are the portable runtime proxy.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import statistics
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from .errors import DpMstError, InvalidParam
from .graph import exact_mst, gen_complete_graph, read_edge_list, write_edge_list
from .mst import (
    PrivacySpec,
    fast_pamst,
    pamst_baseline,
    post_process_gaussian,
    post_process_laplace,
    utility_bound,
)
from .noise import RngStream

ALGOS = ("fast-pamst", "pamst", "post-gauss", "post-laplace", "exact")

RUN_FIELDS = ["algo", "n", "m", "rho", "epsilon", "sensitivity", "seed",
              "tree_weight", "opt_weight", "error", "elapsed_ns",
              "samples_drawn", "comparisons"]

BENCH_FIELDS = ["algo", "n", "m", "rho", "sensitivity", "reps",
                "median_error", "median_elapsed_ns", "median_samples",
                "median_comparisons", "utility_bound"]


@dataclass
class RunRecord:
    algo: str
    n: int
    m: int
    rho: float
    epsilon: float
    sensitivity: float
    seed: int
    tree_weight: float
    opt_weight: float
    error: float
    elapsed_ns: int
    samples_drawn: int
    comparisons: int


def parse_run_record(row: dict) -> RunRecord:
    return RunRecord(
        algo=row["algo"], n=int(row["n"]), m=int(row["m"]),
        rho=float(row["rho"]), epsilon=float(row["epsilon"]),
        sensitivity=float(row["sensitivity"]), seed=int(row["seed"]),
        tree_weight=float(row["tree_weight"]),
        opt_weight=float(row["opt_weight"]), error=float(row["error"]),
        elapsed_ns=int(row["elapsed_ns"]),
        samples_drawn=int(row["samples_drawn"]),
        comparisons=int(row["comparisons"]))


def _make_spec(algo: str, rho, epsilon, sensitivity) -> PrivacySpec:
    if algo == "post-laplace":
        if epsilon is None:
            raise InvalidParam("post-laplace needs --epsilon")
        return PrivacySpec(sensitivity=sensitivity, epsilon=epsilon)
    if rho is not None:
        return PrivacySpec(sensitivity=sensitivity, rho=rho)
    if epsilon is not None:
        return PrivacySpec(sensitivity=sensitivity, epsilon=epsilon)
    raise InvalidParam(f"{algo} needs --rho or --epsilon")


def run_one(algo: str, g, w, rng: RngStream, rho=None, epsilon=None,
            sensitivity: float = 1.0, opt_weight=None):
    """Run one algorithm and return a TreeResult."""
    if algo == "exact":
        return exact_mst(g, w)
    spec = _make_spec(algo, rho, epsilon, sensitivity)
    if algo == "fast-pamst":
        return fast_pamst(rng, g, w, spec, opt_weight=opt_weight)[0]
    if algo == "pamst":
        return pamst_baseline(rng, g, w, spec, opt_weight=opt_weight)[0]
    if algo == "post-gauss":
        return post_process_gaussian(rng, g, w, spec, opt_weight=opt_weight)
    if algo == "post-laplace":
        return post_process_laplace(rng, g, w, spec, opt_weight=opt_weight)
    raise InvalidParam(f"unknown algorithm {algo!r}")


def _append_csv(path, fields, rows):
    new_file = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        if new_file:
            writer.writeheader()
        writer.writerows(rows)


def cmd_gen(args) -> int:
    g, w = gen_complete_graph(args.n, args.seed, args.dist)
    write_edge_list(args.out, g, w)
    return 0


def cmd_run(args) -> int:
    g, w = read_edge_list(args.graph, sensitivity=args.sensitivity)
    rng = RngStream(args.seed).substream(args.algo)
    result = run_one(args.algo, g, w, rng, rho=args.rho, epsilon=args.epsilon,
                     sensitivity=args.sensitivity)
    record = RunRecord(
        algo=args.algo, n=g.n, m=g.m,
        rho=args.rho if args.rho is not None else math.nan,
        epsilon=args.epsilon if args.epsilon is not None else math.nan,
        sensitivity=args.sensitivity, seed=args.seed,
        tree_weight=result.true_weight, opt_weight=result.opt_weight,
        error=result.error, elapsed_ns=result.counters.elapsed_ns,
        samples_drawn=result.counters.samples_drawn,
        comparisons=result.counters.comparisons)
    _append_csv(args.out, RUN_FIELDS, [asdict(record)])
    return 0


def _bench_cell(algo, n, reps, rho, sensitivity, master_seed):
    """All reps for one (algo, n); returns the median summary row."""
    errors, times, samples, comps = [], [], [], []
    master = RngStream(master_seed)
    m = n * (n - 1) // 2
    for rep in range(reps):
        graph_seed = master.substream("graph").substream(n).substream(rep)
        g, w = gen_complete_graph(n, int(graph_seed.gen.integers(2 ** 62)))
        opt = exact_mst(g, w).true_weight
        rng = master.substream(algo).substream(n).substream(rep)
        result = run_one(algo, g, w, rng, rho=rho, sensitivity=sensitivity,
                         opt_weight=opt)
        errors.append(result.error)
        times.append(result.counters.elapsed_ns)
        samples.append(result.counters.samples_drawn)
        comps.append(result.counters.comparisons)
    bound = utility_bound(n, rho, sensitivity, 1.0 / n) \
        if algo == "fast-pamst" else math.nan
    return {
        "algo": algo, "n": n, "m": m, "rho": rho, "sensitivity": sensitivity,
        "reps": reps, "median_error": statistics.median(errors),
        "median_elapsed_ns": statistics.median(times),
        "median_samples": statistics.median(samples),
        "median_comparisons": statistics.median(comps),
        "utility_bound": bound,
    }


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    for algo in algos:
        if algo not in ALGOS:
            raise InvalidParam(f"unknown algorithm {algo!r}")
    if args.reps < 1:
        raise InvalidParam("--reps must be >= 1")
    workers = max(1, int(os.environ.get("DPMST_THREADS", "1")))
    cells = [(algo, n) for algo in algos for n in n_list]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {
            (algo, n): pool.submit(_bench_cell, algo, n, args.reps, args.rho,
                                   args.sensitivity, args.seed)
            for algo, n in cells
        }
        rows = [futures[key].result() for key in cells]  # deterministic order
    _append_csv(args.out, BENCH_FIELDS, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpmst", description="Private MST benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a complete graph edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dist", default="uniform01", choices=["uniform01"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run one algorithm on a graph file")
    p.add_argument("--algo", required=True, choices=ALGOS)
    p.add_argument("--graph", required=True)
    p.add_argument("--rho", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--sensitivity", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="median error/time sweep over n")
    p.add_argument("--algos", required=True,
                   help="comma-separated subset of " + ",".join(ALGOS))
    p.add_argument("--n-list", required=True, help="comma-separated sizes")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--sensitivity", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DpMstError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
