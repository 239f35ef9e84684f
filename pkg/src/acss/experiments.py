"""End-to-end studies: symmetry breaking, polyominoes, polyhedra, hypercubes.

Each ``run_*`` function is a pure function of its config and the CTM table
file.  Randomness comes from one root seed, split per ``(experiment, n,
trial)`` with :class:`numpy.random.SeedSequence` spawn keys, so any subset
of trials reruns identically.

The "entropy" order parameter is :func:`acss.baselines.matrix_block_entropy`
(block size 4) and "compress" is :func:`acss.baselines.compress_matrix`;
graph measures are minimised over labellings.
"""
from __future__ import annotations

import csv
import json
import math
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats as _st

from . import graphs as G
from .baselines import compress_matrix, matrix_block_entropy
from .bdm import DEFAULT_BLOCK, DEFAULT_BOUNDARY, BlockPricer, bdm
from .ctm import CtmParseError, CtmTable
from .polyominoes import bitmap, corner_graph, enumerate_free
from .stats import spearman

MEASURES = ("bdm", "entropy", "compress")
EXPERIMENTS = ("symmetry-breaking", "polyominoes", "polyhedra", "hypercube")
_IDS = {name: i for i, name in enumerate(EXPERIMENTS)}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    table_path: Path
    seed: int = 0
    n_min: int = 5
    n_max: int = 20
    trials: int = 20
    er_p: float = 0.5
    dim_min: int = 2
    dim_max: int = 7
    samples: int = G.DEFAULT_SAMPLES
    measures: Tuple[str, ...] = MEASURES
    block: int = DEFAULT_BLOCK
    boundary: str = DEFAULT_BOUNDARY
    out_dir: Optional[Path] = None
    plots: bool = True
    _table: Optional[CtmTable] = field(default=None, repr=False, compare=False)

    def validate(self) -> None:
        if not set(self.measures) <= set(MEASURES) or not self.measures:
            raise ConfigError(f"measures must be a nonempty subset of {MEASURES}")
        if not 1 <= self.n_min <= self.n_max:
            raise ConfigError("need 1 <= n_min <= n_max")
        if not 0 <= self.dim_min <= self.dim_max:
            raise ConfigError("need 0 <= dim_min <= dim_max")
        if self.trials < 1 or self.samples < 0:
            raise ConfigError("trials must be >= 1 and samples >= 0")
        if not 0 <= self.er_p <= 1:
            raise ConfigError("er_p must lie in [0, 1]")
        self.table

    @property
    def table(self) -> CtmTable:
        if self._table is None:
            path = Path(self.table_path)
            if not path.is_file():
                raise ConfigError(f"CTM table {path} does not exist")
            try:
                self._table = CtmTable.load(path)
            except (CtmParseError, ValueError) as exc:
                raise ConfigError(f"CTM table {path}: {exc}") from None
        return self._table

    def seed_for(self, experiment: str, *key: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.seed, spawn_key=(_IDS[experiment],) + key)


@dataclass
class Report:
    """Rows for ``results.csv`` plus the JSON summary."""
    experiment: str
    columns: Tuple[str, ...]
    rows: List[dict]
    summary: dict

    def write(self, out_dir: Path, plots: bool = True) -> None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / "results.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=self.columns, lineterminator="\n")
            w.writeheader()
            for row in self.rows:
                w.writerow({k: _fmt(row.get(k, "")) for k in self.columns})
        with open(out_dir / "report.json", "w") as fh:
            json.dump(_jsonable(self.summary), fh, indent=2, sort_keys=True)
            fh.write("\n")
        if plots:
            from .plots import plot_report
            plot_report(self, out_dir)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return None if math.isnan(f) or math.isinf(f) else f
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def ordinal_ranks(values: Sequence[float]) -> List[int]:
    """1-based ranks, ties broken by position."""
    return [int(r) for r in _st.rankdata(values, method="ordinal")]


class _Measurer:
    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.pricer = BlockPricer(cfg.table)

    def graph(self, g: G.Graph, seed) -> Dict[str, float]:
        cfg = self.cfg
        return G.graph_measures(g, cfg.table, cfg.measures, cfg.block, cfg.boundary,
                                pricer=self.pricer, mode="sampled",
                                samples=cfg.samples, seed=seed)

    def matrix(self, m) -> Dict[str, float]:
        cfg = self.cfg
        fns = {"bdm": lambda: bdm(m, cfg.block, cfg.table, cfg.boundary),
               "entropy": lambda: matrix_block_entropy(m, cfg.block, cfg.boundary),
               "compress": lambda: float(compress_matrix(m))}
        return {k: fns[k]() for k in cfg.measures}


# -- symmetry breaking -------------------------------------------------------------

GRAPH_KINDS = ("complete", "complete-edge", "complete-node", "er", "er-edge", "er-node")


def sign_test_positive(values: Sequence[float]) -> float:
    """One-sided sign test p-value for an excess of positive values (zeros dropped)."""
    pos = sum(v > 0 for v in values)
    nonzero = sum(v != 0 for v in values)
    if nonzero == 0:
        return 1.0
    return float(_st.binomtest(pos, nonzero, 0.5, alternative="greater").pvalue)


def trial_graphs(cfg: ExperimentConfig, n: int, trial: int):
    """The six graphs of one ``(n, trial)`` cell and the labelling-search seed.

    Missing perturbations (no edge to delete, or n = 1) are ``None``.
    """
    ss = cfg.seed_for("symmetry-breaking", n, trial)
    s_graph, s_edge, s_node, s_search = ss.spawn(4)
    r_edge = np.random.default_rng(s_edge)
    r_node = np.random.default_rng(s_node)
    kn = G.complete(n)
    er = G.erdos_renyi(n, cfg.er_p, np.random.default_rng(s_graph))
    graphs = {"complete": kn, "er": er}
    for name, g in (("complete", kn), ("er", er)):
        edges = g.sorted_edges()
        graphs[f"{name}-edge"] = (G.remove_edge(g, edges[r_edge.integers(len(edges))])
                                  if edges else None)
        graphs[f"{name}-node"] = G.remove_node(g, int(r_node.integers(n))) if n > 1 else None
    return graphs, s_search


def run_symmetry_breaking(cfg: ExperimentConfig) -> Report:
    """Complete graphs and ER controls under single edge / node deletion."""
    cfg.validate()
    meas = _Measurer(cfg)
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        for trial in range(cfg.trials):
            graphs, s_search = trial_graphs(cfg, n, trial)
            for kind in GRAPH_KINDS:
                g = graphs[kind]
                if g is None:
                    continue
                # common random numbers: every graph of a trial sees the same labellings
                values = meas.graph(g, np.random.default_rng(s_search))
                for m in cfg.measures:
                    rows.append({"experiment": "symmetry-breaking", "n": n, "trial": trial,
                                 "graph": kind, "nodes": g.n, "edges": len(g.edges),
                                 "measure": m, "value": values[m]})
    summary = summarize_symmetry_breaking(rows, cfg)
    return Report("symmetry-breaking",
                  ("experiment", "n", "trial", "graph", "nodes", "edges", "measure", "value"),
                  rows, summary)


def er_edge_changes(rows: List[dict], measure: str,
                    ns: Optional[Sequence[int]] = None) -> Dict[int, List[float]]:
    """Per-n relative changes ``(K(er - e) - K(er)) / K(er)``, one per trial."""
    base, cut = {}, {}
    for r in rows:
        if r["measure"] != measure or (ns is not None and r["n"] not in ns):
            continue
        if r["graph"] == "er":
            base[(r["n"], r["trial"])] = r["value"]
        elif r["graph"] == "er-edge":
            cut[(r["n"], r["trial"])] = r["value"]
    out: Dict[int, List[float]] = {}
    for key in sorted(base):
        if key in cut and base[key] > 0:
            out.setdefault(key[0], []).append((cut[key] - base[key]) / base[key])
    return out


def summarize_symmetry_breaking(rows: List[dict], cfg: ExperimentConfig) -> dict:
    by = {}
    for r in rows:
        by.setdefault((r["measure"], r["graph"], r["n"]), {})[r["trial"]] = r["value"]
    medians = {}
    rel_change = {}
    sign_p = {}
    for m in cfg.measures:
        medians[m] = {kind: {n: statistics.median(by[(m, kind, n)].values())
                             for n in range(cfg.n_min, cfg.n_max + 1) if (m, kind, n) in by}
                      for kind in GRAPH_KINDS}
        changes = er_edge_changes(rows, m)
        rel_change[m] = {n: statistics.median(c) for n, c in sorted(changes.items())}
        sign_p[m] = sign_test_positive([c for cs in changes.values() for c in cs])
    summary = {"medians": medians, "er_median_relative_edge_change": rel_change,
               "er_sign_test_p": sign_p, "config": _config_summary(cfg)}
    return summary


# -- polyominoes -------------------------------------------------------------------

def polyomino_objects() -> List[Tuple[str, object]]:
    objs = []
    for size in (4, 5):
        for i, p in enumerate(enumerate_free(size)):
            objs.append((f"{size}-{i:02d}", p))
    return objs


def correlation_block(values: Dict[str, Dict[str, Dict[str, float]]],
                      measures: Sequence[str], a: str = "bitmap", b: str = "graph") -> dict:
    """Spearman rho/p between representations ``a`` and ``b`` for each measure."""
    out = {}
    for m in measures:
        rho, p = spearman(values[a][m], values[b][m])
        out[m] = {"representations": [a, b], "rho": rho, "p": p, "n": len(values[a][m])}
    return out


def run_polyominoes(cfg: ExperimentConfig) -> Report:
    """Free tetrominoes and pentominoes as bitmaps and as corner graphs."""
    cfg.validate()
    meas = _Measurer(cfg)
    values = {"bitmap": {m: {} for m in cfg.measures}, "graph": {m: {} for m in cfg.measures}}
    cells = {}
    for idx, (oid, p) in enumerate(polyomino_objects()):
        cells[oid] = str(p)
        for m, v in meas.matrix(bitmap(p)).items():
            values["bitmap"][m][oid] = v
        g_vals = meas.graph(corner_graph(p), cfg.seed_for("polyominoes", idx))
        for m, v in g_vals.items():
            values["graph"][m][oid] = v
    rows = _ranked_rows("polyominoes", values, cfg.measures, {"cells": cells})
    summary = {"correlations": correlation_block(values, cfg.measures),
               "objects": len(cells), "config": _config_summary(cfg)}
    return Report("polyominoes",
                  ("experiment", "object", "representation", "measure", "value", "rank", "cells"),
                  rows, summary)


def _ranked_rows(experiment, values, measures, extra=None):
    rows = []
    for rep, per_measure in values.items():
        for m in measures:
            ids = sorted(per_measure[m])
            ranks = ordinal_ranks([per_measure[m][i] for i in ids])
            for oid, rank in zip(ids, ranks):
                row = {"experiment": experiment, "object": oid, "representation": rep,
                       "measure": m, "value": per_measure[m][oid], "rank": rank}
                for col, lookup in (extra or {}).items():
                    row[col] = lookup.get(oid, "")
                rows.append(row)
    return rows


# -- polyhedra ---------------------------------------------------------------------

def relative_difference(a: float, b: float) -> float:
    top = max(abs(a), abs(b))
    return 0.0 if top == 0 else abs(a - b) / top


def run_polyhedra(cfg: ExperimentConfig) -> Report:
    """Platonic and Archimedean graphs, plus each Platonic solid against its dual."""
    cfg.validate()
    meas = _Measurer(cfg)
    names = list(G.PLATONIC) + list(G.ARCHIMEDEAN)
    family = {n: ("platonic" if n in G.PLATONIC else "archimedean") for n in names}
    values = {"graph": {m: {} for m in cfg.measures}}
    graphs = {}
    for idx, name in enumerate(names):
        g = G.platonic(name) if name in G.PLATONIC else G.archimedean(name)
        graphs[name] = g
        for m, v in meas.graph(g, cfg.seed_for("polyhedra", idx)).items():
            values["graph"][m][name] = v
    rows = _ranked_rows("polyhedra", values, cfg.measures,
                        {"family": family, "nodes": {n: graphs[n].n for n in names},
                         "edges": {n: len(graphs[n].edges) for n in names}})

    dual_values = {m: {} for m in cfg.measures}
    duals = []
    for idx, name in enumerate(G.PLATONIC):
        d = G.dual(graphs[name])
        match = next(other for other in G.PLATONIC
                     if G.isomorphic(d, graphs[other], allow_large=True))
        dv = meas.graph(d, cfg.seed_for("polyhedra", 100 + idx))
        entry = {"solid": name, "dual": match, "dual_nodes": d.n}
        for m in cfg.measures:
            a, b = values["graph"][m][name], dv[m]
            dual_values[m][name] = b
            entry[m] = {"value": a, "dual_value": b, "abs_diff": abs(a - b),
                        "rel_diff": relative_difference(a, b)}
            rows.append({"experiment": "polyhedra", "object": name, "representation": "dual",
                         "measure": m, "value": b, "family": "platonic-dual",
                         "nodes": d.n, "edges": len(d.edges), "dual_of": name})
        duals.append(entry)
    for m in cfg.measures:
        dual_rows = [r for r in rows if r["representation"] == "dual" and r["measure"] == m]
        for r, rank in zip(dual_rows, ordinal_ranks([r["value"] for r in dual_rows])):
            r["rank"] = rank

    correlations = {}
    for m in cfg.measures:
        primal = {n: values["graph"][m][n] for n in G.PLATONIC}
        rho, p = spearman(primal, dual_values[m])
        # one representative per dual pair: tetrahedron, cube, dodecahedron
        reps = ("tetrahedron", "cube", "dodecahedron")
        rho3, p3 = spearman([primal[n] for n in reps], [dual_values[m][n] for n in reps])
        correlations[m] = {"primal_vs_dual": {"rho": rho, "p": p, "n": 5},
                           "pair_representatives": {"rho": rho3, "p": p3, "n": 3}}
    aggregate = {m: {"platonic_mean": statistics.mean(values["graph"][m][n] for n in G.PLATONIC),
                     "archimedean_mean": statistics.mean(values["graph"][m][n]
                                                         for n in G.ARCHIMEDEAN)}
                 for m in cfg.measures}
    summary = {"duals": duals, "correlations": correlations, "aggregate": aggregate,
               "config": _config_summary(cfg)}
    return Report("polyhedra",
                  ("experiment", "object", "family", "representation", "nodes", "edges",
                   "measure", "value", "rank", "dual_of"),
                  rows, summary)


# -- hypercube ---------------------------------------------------------------------

def run_hypercube(cfg: ExperimentConfig) -> Report:
    """Measures of Q_dim for growing dimension."""
    cfg.validate()
    meas = _Measurer(cfg)
    rows = []
    curve = {m: {} for m in cfg.measures}
    for dim in range(cfg.dim_min, cfg.dim_max + 1):
        g = G.hypercube(dim)
        for m, v in meas.graph(g, cfg.seed_for("hypercube", dim)).items():
            curve[m][dim] = v
            rows.append({"experiment": "hypercube", "dim": dim, "nodes": g.n,
                         "edges": len(g.edges), "measure": m, "value": v})
    monotone = {m: all(curve[m][d] < curve[m][d + 1] for d in range(cfg.dim_min, cfg.dim_max))
                for m in cfg.measures}
    summary = {"curve": curve, "strictly_increasing": monotone, "config": _config_summary(cfg)}
    return Report("hypercube", ("experiment", "dim", "nodes", "edges", "measure", "value"),
                  rows, summary)


RUNNERS = {
    "symmetry-breaking": run_symmetry_breaking,
    "polyominoes": run_polyominoes,
    "polyhedra": run_polyhedra,
    "hypercube": run_hypercube,
}


def _config_summary(cfg: ExperimentConfig) -> dict:
    t = cfg.table.meta
    return {"seed": cfg.seed, "samples": cfg.samples, "block": cfg.block,
            "boundary": cfg.boundary, "measures": list(cfg.measures),
            "table": {"k": t.k, "budget": t.budget, "halting": t.total_halting,
                      "run": t.total_run, "symmetrized": t.symmetrized}}


def run(name: str, cfg: ExperimentConfig) -> Report:
    if name not in RUNNERS:
        raise ConfigError(f"unknown experiment {name!r}; choose from {EXPERIMENTS}")
    report = RUNNERS[name](cfg)
    if cfg.out_dir is not None:
        report.write(cfg.out_dir, plots=cfg.plots)
    return report
