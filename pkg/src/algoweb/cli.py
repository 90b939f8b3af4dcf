"""Command-line entry points.

``grandom``  generates a connected random graph into an ``.ssv`` file.
``algoweb``  runs one algorithm (crt estimator, prim, kruskal) on a graph.
``bench``    runs the benchmark grid and writes CSV results.

Exit codes: 0 success, 2 infeasible parameters (estimator cannot run at
the requested epsilon), 1 I/O or parse errors.  Every error prints a
single line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from pathlib import Path

from .errors import AlgowebError, GraphFormatError, InstanceTooSmallError
from .estimator import approx_mst_weight
from .exact import kruskal_mst, prim_mst
from .generators import MODELS, WEIGHT_DISTS, GeneratorConfig, generate
from .graph import load_ssv, save_ssv
from .harness import CSV_COLUMNS, GridSpec, RunRecord, run_grid, summarize

EXIT_OK = 0
EXIT_IO = 1
EXIT_INFEASIBLE = 2


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _resolve_seed(value: int | None) -> tuple[int, bool]:
    """Seed from flag, ALGOWEB_SEED, or entropy; True if entropy was used."""
    if value is not None:
        return value, False
    env = os.environ.get("ALGOWEB_SEED")
    if env is not None:
        try:
            return int(env), False
        except ValueError:
            raise ValueError(f"ALGOWEB_SEED={env!r} is not an integer") from None
    return int.from_bytes(os.urandom(8), "little"), True


# ---------------------------------------------------------------------------
# grandom
# ---------------------------------------------------------------------------


def grandom_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="grandom",
        description="Generate a connected weighted random graph (.ssv).",
    )
    parser.add_argument("--model", required=True, choices=MODELS)
    parser.add_argument("-n", type=int, required=True, help="number of vertices")
    parser.add_argument("-m", type=int, default=None,
                        help="number of edges (ignored by scalefree)")
    parser.add_argument("-w", type=int, required=True, help="maximum edge weight")
    parser.add_argument("--weight-dist", choices=WEIGHT_DISTS, default="uniform")
    parser.add_argument("--seed", type=int, default=None,
                        help="64-bit seed; defaults to entropy (printed)")
    parser.add_argument("-o", "--out", required=True, help="output .ssv path")
    args = parser.parse_args(argv)

    try:
        seed, from_entropy = _resolve_seed(args.seed)
        cfg = GeneratorConfig(model=args.model, n=args.n, m=args.m, w=args.w,
                              weight_dist=args.weight_dist, seed=seed)
        cfg.validate()
    except ValueError as exc:
        return _fail(str(exc), EXIT_IO)
    if from_entropy:
        print(f"seed={seed}")
    try:
        g = generate(cfg)
        save_ssv(g, args.out)
    except OSError as exc:
        return _fail(str(exc), EXIT_IO)
    print(f"wrote {args.out}: n={g.n} m={g.m} w_max={g.w_max}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# algoweb
# ---------------------------------------------------------------------------


def algoweb_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="algoweb",
        description="Run one MST-weight algorithm on an .ssv graph.",
    )
    parser.add_argument("graph", help="input .ssv file")
    parser.add_argument("-e", "--epsilon", type=float, default=None,
                        help="error tolerance (required for --algo crt)")
    parser.add_argument("--algo", choices=("crt", "prim", "kruskal"),
                        default="crt")
    parser.add_argument("-o", "--out", default=None,
                        help="write the run as a one-record CSV")
    parser.add_argument("--seed", type=int, default=None,
                        help="64-bit seed; ALGOWEB_SEED or entropy otherwise")
    parser.add_argument("--parallel", type=_parse_bool, default=False,
                        metavar="BOOL", help="estimate thresholds concurrently")
    parser.add_argument("--hub-mult", type=float, default=1.0,
                        help="scale the hub-degree abort threshold")
    parser.add_argument("--budget-mult", type=float, default=1.0,
                        help="scale the BFS edge budget")
    parser.add_argument("--flip-cap", type=int, default=None,
                        help="override the coin-flip cap per BFS")
    args = parser.parse_args(argv)

    try:
        g = load_ssv(args.graph)
    except FileNotFoundError:
        return _fail(f"{args.graph}: no such file", EXIT_IO)
    except (GraphFormatError, OSError) as exc:
        return _fail(str(exc), EXIT_IO)

    record = None
    if args.algo in ("prim", "kruskal"):
        t0 = time.perf_counter_ns()
        try:
            weight, touches = (prim_mst if args.algo == "prim" else kruskal_mst)(g)
        except AlgowebError as exc:
            return _fail(str(exc), EXIT_IO)
        elapsed = time.perf_counter_ns() - t0
        print(f"{args.algo} weight={weight} elapsed_ns={elapsed}")
        record = RunRecord(
            model="", n=g.n, m=g.m, w=g.w_max, epsilon=None, algo=args.algo,
            seed=None, rep=0, weight=weight, elapsed_ns=elapsed,
            edges_examined=touches, r=None, c=None, exact_weight=weight,
            abs_error=0.0, rel_error=0.0, cone_lo=None, cone_hi=None,
        )
    else:
        if args.epsilon is None:
            return _fail("--algo crt requires --epsilon", EXIT_INFEASIBLE)
        try:
            seed, from_entropy = _resolve_seed(args.seed)
        except ValueError as exc:
            return _fail(str(exc), EXIT_IO)
        if from_entropy:
            print(f"seed={seed}")
        try:
            report = approx_mst_weight(
                g, args.epsilon, seed=seed, parallel=args.parallel,
                hub_mult=args.hub_mult, budget_mult=args.budget_mult,
                flip_cap=args.flip_cap,
            )
        except InstanceTooSmallError as exc:
            return _fail(str(exc), EXIT_INFEASIBLE)
        except (AlgowebError, ValueError) as exc:
            return _fail(str(exc), EXIT_IO)
        print(
            f"crt weight={report.v_hat!r} elapsed_ns={report.elapsed_ns} "
            f"edges_examined={report.edges_examined} "
            f"d_star={report.params.d_star!r} "
            f"r={report.params.roots_per_threshold} "
            f"C={report.params.budget_constant} "
            f"bfs={report.bfs_started}/{report.bfs_completed}ok/"
            f"{report.bfs_aborted_hub}hub/{report.bfs_aborted_budget}budget/"
            f"{report.bfs_aborted_tails}tails"
        )
        record = RunRecord(
            model="", n=g.n, m=g.m, w=g.w_max, epsilon=args.epsilon,
            algo="crt", seed=seed, rep=0, weight=report.v_hat,
            elapsed_ns=report.elapsed_ns,
            edges_examined=report.edges_examined,
            r=report.params.roots_per_threshold,
            c=report.params.budget_constant, exact_weight=None,
            abs_error=None, rel_error=None, cone_lo=None, cone_hi=None,
        )

    if args.out is not None:
        try:
            with open(args.out, "w", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(CSV_COLUMNS)
                writer.writerow(record.to_row())
        except OSError as exc:
            return _fail(str(exc), EXIT_IO)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t]


def bench_main(argv=None) -> int:
    default = GridSpec()
    parser = argparse.ArgumentParser(
        prog="bench",
        description="Run the benchmark grid and write CSV results.",
    )
    parser.add_argument("--models", default=",".join(default.models),
                        help="comma-separated subset of "
                             f"{','.join(MODELS)}")
    parser.add_argument("--n", type=_int_list,
                        default=default.n_list, metavar="N1,N2,...")
    parser.add_argument("--deg", type=_int_list,
                        default=default.degree_list, metavar="D1,D2,...",
                        help="average degrees; edge count is d*n/2")
    parser.add_argument("--w", type=_int_list,
                        default=default.w_list, metavar="W1,W2,...")
    parser.add_argument("--eps", type=_float_list,
                        default=default.eps_list, metavar="E1,E2,...")
    parser.add_argument("--reps", type=int, default=default.repetitions)
    parser.add_argument("--seed", type=int, default=None,
                        help="master seed; ALGOWEB_SEED or entropy otherwise")
    parser.add_argument("--weight-dist", choices=WEIGHT_DISTS, default="uniform")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--cache-dir", default=None,
                        help="directory for generated-graph .ssv cache")
    parser.add_argument("--kruskal", action="store_true",
                        help="also time Kruskal on every graph")
    parser.add_argument("--parallel", type=_parse_bool, default=False,
                        metavar="BOOL")
    parser.add_argument("--quiet", action="store_true")
    args = parser.parse_args(argv)

    try:
        seed, from_entropy = _resolve_seed(args.seed)
    except ValueError as exc:
        return _fail(str(exc), EXIT_IO)
    if from_entropy:
        print(f"seed={seed}")
    spec = GridSpec(
        models=[m for m in args.models.split(",") if m],
        n_list=args.n, degree_list=args.deg, w_list=args.w,
        eps_list=args.eps, repetitions=args.reps, master_seed=seed,
        weight_dist=args.weight_dist,
    )
    try:
        spec.validate()
    except ValueError as exc:
        return _fail(str(exc), EXIT_IO)
    try:
        result = run_grid(spec, args.out, cache_dir=args.cache_dir,
                          include_kruskal=args.kruskal,
                          parallel=args.parallel, quiet=args.quiet)
    except OSError as exc:
        return _fail(str(exc), EXIT_IO)
    summary_path = Path(args.out) / "summary.csv"
    summarize(result.merged, summary_path)
    print(f"wrote {result.rows} rows to {result.merged} "
          f"(+ per-model files, summary.csv)")
    if result.skipped is not None:
        print(f"some cells were infeasible; see {result.skipped}")
    return EXIT_OK
