"""Compare the compiled and pure-Python cut-queue cores.

Times (a) a synthetic insert/delete/query workload on the queue alone and
(b) full fast private MST runs with each core. Run as::

    python3 benchmarks/bench_backends.py [--n 512] [--reps 3]
"""

import argparse
import time

import numpy as np

from dpmst.cutqueue import HAVE_EXTENSION, CutQueue
from dpmst.cutqueue._pure import PureQueueCore
from dpmst.graph import gen_complete_graph
from dpmst.mst import PrivacySpec, fast_pamst
from dpmst.noise import RngStream


def queue_workload(core_cls, g, w, ops: int, seed: int) -> float:
    q = CutQueue(g, w, s=1e-5, negate=True, core_cls=core_cls)
    rng = np.random.default_rng(seed)
    edges = rng.integers(0, g.m, size=ops)
    kinds = rng.integers(0, 4, size=ops)
    t0 = time.perf_counter()
    for e, kind in zip(edges, kinds):
        e = int(e)
        if kind == 0 and not q.is_active(e):
            q.insert(e)
        elif kind == 1 and q.is_active(e):
            q.delete(e)
        elif kind == 2:
            q.max_active_group()
        elif q.total_active:
            q.select_active_by_rank(2 ** 40, rng.integers(0, q.total_active))
    return time.perf_counter() - t0


def mst_run(core_cls, g, w, seed: int) -> float:
    spec = PrivacySpec(sensitivity=1e-5, rho=0.1)
    t0 = time.perf_counter()
    fast_pamst(RngStream(seed), g, w, spec, core_cls=core_cls)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=512)
    parser.add_argument("--reps", type=int, default=3)
    parser.add_argument("--ops", type=int, default=200_000)
    args = parser.parse_args()

    cores = [("pure", PureQueueCore)]
    if HAVE_EXTENSION:
        from dpmst.cutqueue._core import ExtQueueCore
        cores.append(("ext", ExtQueueCore))
    else:
        print("compiled core not available; benchmarking pure only")

    g, w = gen_complete_graph(args.n, seed=1)
    print(f"complete graph n={args.n} m={g.m}")

    for label, fn, arg in [("queue ops", queue_workload, args.ops),
                           ("fast mst", mst_run, None)]:
        print(f"-- {label}")
        base = None
        for name, core_cls in cores:
            times = []
            for rep in range(args.reps):
                if fn is queue_workload:
                    times.append(fn(core_cls, g, w, arg, seed=rep))
                else:
                    times.append(fn(core_cls, g, w, seed=rep))
            best = min(times)
            speedup = "" if base is None else f"  ({base / best:.1f}x vs pure)"
            if base is None:
                base = best
            print(f"   {name:5s} {best * 1e3:9.1f} ms{speedup}")


if __name__ == "__main__":
    main()
