"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the same workloads through ``algoweb._core`` and ``algoweb._pycore``
on one generated graph, checks the results agree, and prints a timing
table.  Console script: ``algoweb-backbench``.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from .estimator import compute_params
from .generators import GeneratorConfig, generate


def _workloads(g, eps: float, seed: int):
    params = compute_params(g.n, g.w_max, eps)
    su, sv, sw = g._edges_by_weight()
    mid = max(1, g.w_max // 2)

    def rng_stream(impl):
        rng = impl.Rng(seed)
        acc = 0
        for _ in range(200_000):
            acc ^= rng.next_u64()
        return acc

    def prim(impl):
        return impl.prim_mst(g.indptr, g.nbr, g.wt, g.n)

    def kruskal(impl):
        return impl.kruskal_mst(su, sv, sw, g.n)

    def sweep(impl):
        return impl.components_sweep(su, sv, sw, g.n, g.w_max).tolist()

    def probes(impl):
        perm = np.arange(g.n, dtype=np.int64)
        return impl.estimate_threshold(
            g.indptr, g.nbr, g._scan_bounds(mid), g._reach_degrees(mid),
            g.n, min(params.roots_per_threshold, g.n),
            4.0 * max(2.0 * g.m / g.n, 1.0),
            max(1, int(2.0 * g.m / g.n / eps) * 8), 16, seed, perm,
        )

    return [
        ("rng_stream_200k", rng_stream),
        ("prim", prim),
        ("kruskal", kruskal),
        ("components_sweep", sweep),
        ("estimate_threshold", probes),
    ]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="algoweb-backbench",
        description="Compare compiled and pure-Python kernel backends.",
    )
    parser.add_argument("-n", type=int, default=50_000)
    parser.add_argument("-d", type=int, default=20, help="average degree")
    parser.add_argument("-w", type=int, default=20)
    parser.add_argument("--eps", type=float, default=0.3)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out", default=None, help="optional CSV output")
    args = parser.parse_args(argv)

    from . import _pycore

    try:
        from . import _core
    except ImportError:
        print("compiled backend not built; nothing to compare", file=sys.stderr)
        return 1

    g = generate(GeneratorConfig(
        model="uniform", n=args.n, m=args.d * args.n // 2, w=args.w,
        seed=args.seed,
    ))
    print(f"graph: n={g.n} m={g.m} w_max={g.w_max}")
    header = f"{'workload':<22}{'compiled':>12}{'python':>14}{'speedup':>9}"
    print(header)
    print("-" * len(header))

    rows = []
    for name, fn in _workloads(g, args.eps, args.seed):
        out_c, t_c = _timed(fn, _core)
        out_p, t_p = _timed(fn, _pycore)
        if out_c != out_p:
            print(f"MISMATCH in {name}: {out_c!r} != {out_p!r}", file=sys.stderr)
            return 1
        print(f"{name:<22}{t_c * 1e3:>10.2f}ms{t_p * 1e3:>12.2f}ms"
              f"{t_p / t_c:>8.1f}x")
        rows.append([name, repr(t_c), repr(t_p), repr(t_p / t_c)])

    if args.out:
        with open(args.out, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["workload", "compiled_s", "python_s", "speedup"])
            writer.writerows(rows)
    return 0


def _timed(fn, impl):
    t0 = time.perf_counter()
    out = fn(impl)
    return out, time.perf_counter() - t0


if __name__ == "__main__":
    raise SystemExit(main())
