"""SVG figures for experiment reports.

Figures are written with a fixed hash salt and no date so reruns produce
identical files.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_SVG = {"metadata": {"Date": None}}


def _save(fig, path: Path) -> None:
    with matplotlib.rc_context({"svg.hashsalt": "acss", "svg.fonttype": "none"}):
        fig.savefig(path, format="svg", **_SVG)
    plt.close(fig)


def _symmetry_breaking(report, out: Path) -> None:
    medians = report.summary["medians"]
    for m, kinds in medians.items():
        fig, ax = plt.subplots(figsize=(6, 4))
        for kind, curve in kinds.items():
            if curve:
                ns = sorted(curve)
                ax.plot(ns, [curve[n] for n in ns], marker="o", ms=3, label=kind)
        ax.set_xlabel("n")
        ax.set_ylabel(f"median {m}")
        ax.legend(fontsize=7)
        _save(fig, out / f"plot_{m}.svg")


def _polyominoes(report, out: Path) -> None:
    by = {}
    for r in report.rows:
        by.setdefault(r["measure"], {}).setdefault(r["representation"], {})[r["object"]] = r["rank"]
    for m, reps in by.items():
        ids = sorted(reps["bitmap"])
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        ax.scatter([reps["bitmap"][i] for i in ids], [reps["graph"][i] for i in ids], s=14)
        ax.set_xlabel("bitmap rank")
        ax.set_ylabel("corner-graph rank")
        rho = report.summary["correlations"][m]["rho"]
        ax.set_title(f"{m}: rho = {rho:.3f}" if rho is not None else m)
        _save(fig, out / f"plot_{m}.svg")


def _polyhedra(report, out: Path) -> None:
    measures = report.summary["aggregate"]
    for m in measures:
        rows = [r for r in report.rows if r["measure"] == m and r["representation"] == "graph"]
        fig, ax = plt.subplots(figsize=(7, 4))
        colors = ["tab:blue" if r["family"] == "platonic" else "tab:orange" for r in rows]
        ax.bar(range(len(rows)), [r["value"] for r in rows], color=colors)
        ax.set_xticks(range(len(rows)), [r["object"] for r in rows], rotation=75, fontsize=6)
        ax.set_ylabel(m)
        fig.tight_layout()
        _save(fig, out / f"plot_{m}.svg")


def _hypercube(report, out: Path) -> None:
    for m, curve in report.summary["curve"].items():
        dims = sorted(curve)
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot(dims, [curve[d] for d in dims], marker="o")
        ax.set_xlabel("dimension")
        ax.set_ylabel(m)
        _save(fig, out / f"plot_{m}.svg")


_PLOTTERS = {
    "symmetry-breaking": _symmetry_breaking,
    "polyominoes": _polyominoes,
    "polyhedra": _polyhedra,
    "hypercube": _hypercube,
}


def plot_report(report, out_dir) -> None:
    _PLOTTERS[report.experiment](report, Path(out_dir))
