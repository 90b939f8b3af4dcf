"""Chart rendering from benchmark result CSVs.

A cell is (model, epsilon, degree, w) with degree = round(2m/n); within a
cell the x-axis is the edge count m, which grows with the vertex grid.
Rendering is a pure function of the CSV contents: the same input yields
the same set of output filenames.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

REQUIRED_COLUMNS = [
    "model", "n", "m", "w", "epsilon", "algo", "seed", "rep", "weight",
    "elapsed_ns", "edges_examined", "r", "C", "exact_weight", "abs_error",
    "rel_error", "cone_lo", "cone_hi",
]

CONE_LOWER_COLOR = "lightskyblue"
CONE_UPPER_COLOR = "goldenrod"  # ochre


class RenderError(ValueError):
    """Bad input CSV or a selection that matches nothing."""


@dataclass(frozen=True)
class CellKey:
    model: str
    epsilon: float
    degree: int
    w: int

    def slug(self) -> str:
        return f"{self.model}_eps{self.epsilon:g}_d{self.degree}_w{self.w}"


def _load(csv_path) -> pd.DataFrame:
    frame = pd.read_csv(csv_path)
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise RenderError(f"{csv_path}: missing columns {missing}")
    frame["degree"] = (2 * frame["m"] / frame["n"]).round().astype(int)
    return frame


def _select_cells(frame, model, eps, deg, w) -> list[CellKey]:
    crt = frame[frame["algo"] == "crt"]
    if model is not None:
        crt = crt[crt["model"] == model]
    if eps is not None:
        crt = crt[abs(crt["epsilon"] - eps) < 1e-12]
    if deg is not None:
        crt = crt[crt["degree"] == deg]
    if w is not None:
        crt = crt[crt["w"] == w]
    cells = {
        CellKey(r.model, float(r.epsilon), int(r.degree), int(r.w))
        for r in crt.itertuples()
    }
    return sorted(cells, key=lambda c: (c.model, c.epsilon, c.degree, c.w))


def _cell_frames(frame, cell: CellKey):
    exact = frame[
        (frame["model"] == cell.model)
        & (frame["degree"] == cell.degree)
        & (frame["w"] == cell.w)
    ]
    crt = exact[
        (exact["algo"] == "crt") & (abs(exact["epsilon"] - cell.epsilon) < 1e-12)
    ].sort_values(["m", "rep"])
    prim = exact[exact["algo"] == "prim"].sort_values("m")
    kruskal = exact[exact["algo"] == "kruskal"].sort_values("m")
    return crt, prim, kruskal


def _finish(ax, fig, title, out_path):
    lo, hi = ax.get_ylim()
    ax.set_title(f"{title}\n(y range [{lo:.3g}, {hi:.3g}])", fontsize=10)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=110)
    plt.close(fig)


def _render_time(cell, crt, prim, kruskal, out_path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    mean_crt = crt.groupby("m")["elapsed_ns"].mean()
    ax.plot(mean_crt.index, mean_crt.values / 1e6, "o-",
            label="estimator (mean of reps)")
    ax.plot(prim["m"], prim["elapsed_ns"] / 1e6, "s-", label="prim")
    if len(kruskal):
        ax.plot(kruskal["m"], kruskal["elapsed_ns"] / 1e6, "^-", label="kruskal")
    ax.set_xlabel("edges m")
    ax.set_ylabel("running time [ms]")
    _finish(ax, fig, f"running time vs m ({cell.slug()})", out_path)


def _render_abs(cell, crt, out_path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.scatter(crt["m"], crt["abs_error"], s=12, alpha=0.6, label="runs")
    mean_abs = crt.groupby("m")["abs_error"].mean()
    ax.plot(mean_abs.index, mean_abs.values, "o-", label="mean")
    cone = crt.groupby("m")[["cone_lo", "cone_hi", "exact_weight"]].first()
    ax.plot(cone.index, cone["cone_lo"] - cone["exact_weight"],
            color=CONE_LOWER_COLOR, label="cone low")
    ax.plot(cone.index, cone["cone_hi"] - cone["exact_weight"],
            color=CONE_UPPER_COLOR, label="cone high")
    ax.axhline(0.0, color="gray", lw=0.8)
    ax.set_xlabel("edges m")
    ax.set_ylabel("estimate - exact weight")
    _finish(ax, fig, f"absolute error with tolerance cone ({cell.slug()})",
            out_path)


def _render_rel(cell, crt, out_path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.scatter(crt["m"], crt["rel_error"], s=12, alpha=0.6, label="runs")
    mean_rel = crt.groupby("m")["rel_error"].mean()
    ax.plot(mean_rel.index, mean_rel.values, "o-", label="mean")
    ax.axhline(cell.epsilon, color=CONE_UPPER_COLOR, ls="--",
               label=f"+eps = {cell.epsilon:g}")
    ax.axhline(-cell.epsilon, color=CONE_LOWER_COLOR, ls="--",
               label=f"-eps = {-cell.epsilon:g}")
    ax.axhline(0.0, color="gray", lw=0.8)
    ax.set_xlabel("edges m")
    ax.set_ylabel("relative error")
    _finish(ax, fig, f"relative error ({cell.slug()})", out_path)


def render(csv_path, out_dir, *, model=None, eps=None, deg=None, w=None) -> list[Path]:
    """Render the three chart types for every selected cell.

    Returns the list of written image paths (three per cell).  Raises
    :class:`RenderError` when the CSV lacks schema columns or the filter
    selects nothing.
    """
    frame = _load(csv_path)
    cells = _select_cells(frame, model, eps, deg, w)
    if not cells:
        raise RenderError("selection matches no estimator rows in the CSV")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for cell in cells:
        crt, prim, kruskal = _cell_frames(frame, cell)
        slug = cell.slug()
        targets = [
            (out_dir / f"{slug}_time.png",
             lambda p: _render_time(cell, crt, prim, kruskal, p)),
            (out_dir / f"{slug}_abs_error.png",
             lambda p: _render_abs(cell, crt, p)),
            (out_dir / f"{slug}_rel_error.png",
             lambda p: _render_rel(cell, crt, p)),
        ]
        for path, fn in targets:
            fn(path)
            written.append(path)
    return written
