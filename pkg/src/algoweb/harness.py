"""Benchmark harness: grid generation, repeated timed runs, CSV emission.

A grid cell is (model, n, d, w, epsilon); the graph of a cell is shared by
every epsilon value and cached in memory (optionally on disk, keyed by a
content filename) so it is generated once.  The exact weight is computed
once per graph with Prim; the estimator runs ``repetitions`` times per
cell with derived seeds.  Kruskal rows are optional.

Timing covers only the algorithm call: graph construction, Fisher-Yates
preparation and file I/O stay outside the clock.  Wall-clock numbers are
recorded but trend checks should rely on ``edges_examined``, which is
machine-independent.

Every run appends one CSV row; the schema is fixed:

    model,n,m,w,epsilon,algo,seed,rep,weight,elapsed_ns,edges_examined,
    r,C,exact_weight,abs_error,rel_error,cone_lo,cone_hi

Cells whose parameters are infeasible for the estimator are recorded in a
separate ``skipped.csv`` (model,n,m,w,epsilon,reason) instead of aborting
the grid.  Reruns with the same master seed reproduce every file
byte-for-byte except the elapsed_ns column.
"""

from __future__ import annotations

import csv
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InstanceTooSmallError
from .estimator import approx_mst_weight, make_fy_pool
from .exact import kruskal_mst, prim_mst
from .generators import MODELS, GeneratorConfig, generate
from .graph import Graph, load_ssv, save_ssv
from .rng import derive_seed

CSV_COLUMNS = [
    "model", "n", "m", "w", "epsilon", "algo", "seed", "rep", "weight",
    "elapsed_ns", "edges_examined", "r", "C", "exact_weight", "abs_error",
    "rel_error", "cone_lo", "cone_hi",
]

SKIPPED_COLUMNS = ["model", "n", "m", "w", "epsilon", "reason"]

# Derivation labels for the seed chain (master -> model -> n -> m -> w -> eps -> rep)
_LBL_MODEL = 101
_LBL_EPS = 202


@dataclass
class RunRecord:
    """One benchmark observation; maps 1:1 onto a CSV row."""

    model: str
    n: int
    m: int
    w: int
    epsilon: float | None
    algo: str
    seed: int | None
    rep: int
    weight: float | int | None
    elapsed_ns: int
    edges_examined: int | None
    r: int | None
    c: int | None
    exact_weight: int | None
    abs_error: float | None
    rel_error: float | None
    cone_lo: float | None
    cone_hi: float | None

    def to_row(self) -> list[str]:
        vals = [
            self.model, self.n, self.m, self.w, self.epsilon, self.algo,
            self.seed, self.rep, self.weight, self.elapsed_ns,
            self.edges_examined, self.r, self.c, self.exact_weight,
            self.abs_error, self.rel_error, self.cone_lo, self.cone_hi,
        ]
        return ["" if v is None else repr(v) if isinstance(v, float) else str(v)
                for v in vals]


@dataclass
class GridSpec:
    """The run grid.  Defaults are the desk-scale grid: all four models,
    n from 25k to 200k at average degree 20, max weight 20, two epsilons,
    ten repetitions."""

    models: list[str] = field(default_factory=lambda: list(MODELS))
    n_list: list[int] = field(default_factory=lambda: [25_000, 50_000, 100_000, 200_000])
    degree_list: list[int] = field(default_factory=lambda: [20])
    w_list: list[int] = field(default_factory=lambda: [20])
    eps_list: list[float] = field(default_factory=lambda: [0.3, 0.4])
    repetitions: int = 10
    master_seed: int = 0
    weight_dist: str = "uniform"

    def validate(self) -> None:
        for name in ("models", "n_list", "degree_list", "w_list", "eps_list"):
            if not getattr(self, name):
                raise ValueError(f"GridSpec.{name} must be nonempty")
        for model in self.models:
            if model not in MODELS:
                raise ValueError(f"unknown model {model!r}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass
class GridResult:
    out_dir: Path
    per_model: dict[str, Path]
    merged: Path
    skipped: Path | None
    rows: int


def _graph_seed(spec: GridSpec, model: str, n: int, m: int, w: int) -> int:
    s = derive_seed(spec.master_seed, _LBL_MODEL + MODELS.index(model))
    for part in (n, m, w):
        s = derive_seed(s, part)
    return s


def _cell_graph(spec: GridSpec, model: str, n: int, d: int, w: int,
                cache_dir: Path | None, log) -> tuple[Graph, GeneratorConfig]:
    m = None if model == "scalefree" else d * n // 2
    seed = _graph_seed(spec, model, n, m if m is not None else 0, w)
    cfg = GeneratorConfig(model=model, n=n, m=m, w=w,
                          weight_dist=spec.weight_dist, seed=seed)
    if cache_dir is not None:
        mm = "na" if m is None else str(m)
        name = f"{model}_n{n}_m{mm}_w{w}_{spec.weight_dist}_s{seed}.ssv"
        path = cache_dir / name
        if path.exists():
            log(f"load cached {name}")
            g = load_ssv(path)
            g.connected_hint = True  # generator output is connected
            return g, cfg
        g = generate(cfg)
        cache_dir.mkdir(parents=True, exist_ok=True)
        save_ssv(g, path)
        return g, cfg
    log(f"generate {model} n={n} d={d} w={w}")
    return generate(cfg), cfg


def run_grid(
    spec: GridSpec,
    out_dir,
    *,
    cache_dir=None,
    include_kruskal: bool = False,
    parallel: bool = False,
    quiet: bool = False,
) -> GridResult:
    """Run the whole grid and write per-model plus merged CSV files."""
    spec.validate()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cache_dir = Path(cache_dir) if cache_dir is not None else None
    log = (lambda msg: None) if quiet else (
        lambda msg: print(f"[bench] {msg}", file=sys.stderr, flush=True)
    )

    per_model: dict[str, Path] = {}
    model_rows: dict[str, list[list[str]]] = {m: [] for m in spec.models}
    skipped_rows: list[list[str]] = []
    total_rows = 0

    for model in spec.models:
        for n in spec.n_list:
            for d in spec.degree_list:
                for w in spec.w_list:
                    g, cfg = _cell_graph(spec, model, n, d, w, cache_dir, log)
                    rows = _run_cell(spec, g, cfg, model, n, w,
                                     include_kruskal, parallel, skipped_rows, log)
                    model_rows[model].extend(rows)
                    total_rows += len(rows)

    for model in spec.models:
        path = out_dir / f"results_{model}.csv"
        _write_csv(path, CSV_COLUMNS, model_rows[model])
        per_model[model] = path
    merged = out_dir / "results_all.csv"
    _write_csv(merged, CSV_COLUMNS,
               [row for model in spec.models for row in model_rows[model]])
    skipped_path = None
    if skipped_rows:
        skipped_path = out_dir / "skipped.csv"
        _write_csv(skipped_path, SKIPPED_COLUMNS, skipped_rows)
    return GridResult(out_dir=out_dir, per_model=per_model, merged=merged,
                      skipped=skipped_path, rows=total_rows)


def _run_cell(spec, g, cfg, model, n, w, include_kruskal, parallel,
              skipped_rows, log) -> list[list[str]]:
    rows: list[list[str]] = []

    t0 = time.perf_counter_ns()
    exact_weight, prim_touches = prim_mst(g)
    prim_ns = time.perf_counter_ns() - t0
    rows.append(RunRecord(
        model=model, n=n, m=g.m, w=w, epsilon=None, algo="prim", seed=None,
        rep=0, weight=exact_weight, elapsed_ns=prim_ns,
        edges_examined=prim_touches, r=None, c=None,
        exact_weight=exact_weight, abs_error=0.0, rel_error=0.0,
        cone_lo=None, cone_hi=None,
    ).to_row())

    if include_kruskal:
        t0 = time.perf_counter_ns()
        k_weight, k_touches = kruskal_mst(g)
        k_ns = time.perf_counter_ns() - t0
        rows.append(RunRecord(
            model=model, n=n, m=g.m, w=w, epsilon=None, algo="kruskal",
            seed=None, rep=0, weight=k_weight, elapsed_ns=k_ns,
            edges_examined=k_touches, r=None, c=None,
            exact_weight=exact_weight,
            abs_error=float(k_weight - exact_weight),
            rel_error=float(k_weight - exact_weight) / exact_weight,
            cone_lo=None, cone_hi=None,
        ).to_row())

    for eps_idx, eps in enumerate(spec.eps_list):
        eps_seed = derive_seed(cfg.seed, _LBL_EPS + eps_idx)
        for rep in range(spec.repetitions):
            run_seed = derive_seed(eps_seed, rep)
            pool = make_fy_pool(g.n, g.w_max)
            try:
                report = approx_mst_weight(
                    g, eps, seed=run_seed, parallel=parallel, fy_pool=pool,
                )
            except InstanceTooSmallError as exc:
                skipped_rows.append(
                    [model, str(n), str(g.m), str(w), repr(eps), str(exc)]
                )
                log(f"skip {model} n={n} w={w} eps={eps}: {exc}")
                break
            abs_err = report.v_hat - exact_weight
            rows.append(RunRecord(
                model=model, n=n, m=g.m, w=w, epsilon=eps, algo="crt",
                seed=run_seed, rep=rep, weight=report.v_hat,
                elapsed_ns=report.elapsed_ns,
                edges_examined=report.edges_examined,
                r=report.params.roots_per_threshold,
                c=report.params.budget_constant,
                exact_weight=exact_weight, abs_error=abs_err,
                rel_error=abs_err / exact_weight,
                cone_lo=exact_weight * (1.0 - eps),
                cone_hi=exact_weight * (1.0 + eps),
            ).to_row())
    return rows


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------


def summarize(csv_path, out_path=None) -> list[dict]:
    """Per-cell aggregates of a results CSV.

    Groups rows by (model, n, m, w, epsilon, algo) and reports run count,
    mean (progressive), min and max elapsed time, mean |relative error|,
    the fraction of runs inside the tolerance cone, mean edges examined,
    and a representative weight (the first repetition's, i.e. one seeded
    run rather than an average, preserving the estimate's spread).
    Optionally writes the aggregate table as CSV.
    """
    groups: dict[tuple, dict] = {}
    with open(csv_path, newline="") as f:
        reader = csv.DictReader(f)
        missing = [c for c in CSV_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"{csv_path}: missing columns {missing}")
        for row in reader:
            key = tuple(row[k] for k in ("model", "n", "m", "w", "epsilon", "algo"))
            agg = groups.get(key)
            if agg is None:
                agg = groups[key] = {
                    "model": row["model"], "n": row["n"], "m": row["m"],
                    "w": row["w"], "epsilon": row["epsilon"], "algo": row["algo"],
                    "runs": 0, "mean_elapsed_ns": 0.0,
                    "min_elapsed_ns": None, "max_elapsed_ns": None,
                    "mean_abs_rel_error": 0.0, "in_cone_fraction": None,
                    "mean_edges_examined": None,
                    "representative_weight": float(row["weight"]),
                    "_in_cone": 0, "_edges_n": 0, "_edges_mean": 0.0,
                }
            agg["runs"] += 1
            k = agg["runs"]
            elapsed = int(row["elapsed_ns"])
            agg["mean_elapsed_ns"] += (elapsed - agg["mean_elapsed_ns"]) / k
            agg["min_elapsed_ns"] = (
                elapsed if agg["min_elapsed_ns"] is None
                else min(agg["min_elapsed_ns"], elapsed)
            )
            agg["max_elapsed_ns"] = (
                elapsed if agg["max_elapsed_ns"] is None
                else max(agg["max_elapsed_ns"], elapsed)
            )
            rel = float(row["rel_error"]) if row["rel_error"] else 0.0
            agg["mean_abs_rel_error"] += (abs(rel) - agg["mean_abs_rel_error"]) / k
            if row["cone_lo"]:
                weight = float(row["weight"])
                if float(row["cone_lo"]) <= weight <= float(row["cone_hi"]):
                    agg["_in_cone"] += 1
            if row["edges_examined"]:
                agg["_edges_n"] += 1
                agg["_edges_mean"] += (
                    int(row["edges_examined"]) - agg["_edges_mean"]
                ) / agg["_edges_n"]

    out = []
    for key in sorted(groups):
        agg = groups[key]
        if agg["algo"] == "crt":
            agg["in_cone_fraction"] = agg["_in_cone"] / agg["runs"]
        if agg["_edges_n"]:
            agg["mean_edges_examined"] = agg["_edges_mean"]
        del agg["_in_cone"], agg["_edges_n"], agg["_edges_mean"]
        out.append(agg)

    if out_path is not None:
        cols = ["model", "n", "m", "w", "epsilon", "algo", "runs",
                "mean_elapsed_ns", "min_elapsed_ns", "max_elapsed_ns",
                "mean_abs_rel_error", "in_cone_fraction",
                "mean_edges_examined", "representative_weight"]
        rows = [
            ["" if a[c] is None else repr(a[c]) if isinstance(a[c], float) else str(a[c])
             for c in cols]
            for a in out
        ]
        _write_csv(Path(out_path), cols, rows)
    return out
