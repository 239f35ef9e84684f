"""Command line entry point: ``acss``.

Exit codes: 0 on success, 2 on a configuration error, 3 when a size
guard refuses the request.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import graphs as G
from .bdm import BOUNDARIES, DEFAULT_BLOCK, DEFAULT_BOUNDARY, bdm
from .ctm import CtmParseError, CtmTable, build_table
from .experiments import EXPERIMENTS, ConfigError, ExperimentConfig, run
from .matrix import read_matrix
from .turmite import DEFAULT_BUDGET, machine_count

EXIT_CONFIG = 2
EXIT_SIZE = 3
# (8*4)^6 > 10^9 machines for k=3; refuse without an explicit override
STATES_LIMIT = 2


class SizeRefused(Exception):
    pass


def _load_table(path) -> CtmTable:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"CTM table {p} does not exist")
    try:
        return CtmTable.load(p)
    except CtmParseError as exc:
        raise ConfigError(f"CTM table {p}: {exc}") from None


def _read(reader, path, what):
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"{what} file {p} does not exist")
    try:
        return reader(p)
    except ValueError as exc:
        raise ConfigError(f"{what} file {p}: {exc}") from None


def cmd_ctm_build(args) -> None:
    if args.states < 1 or args.budget < 1:
        raise ConfigError("--states and --budget must be positive")
    if args.states > STATES_LIMIT and not args.allow_large:
        raise SizeRefused(f"{machine_count(args.states)} machines for k={args.states}; "
                          f"pass --allow-large to enumerate anyway")
    table = build_table(args.states, args.budget, workers=args.workers)
    if args.symmetrize:
        table = table.symmetrize()
    table.save(args.out)
    meta = table.meta
    print(f"wrote {args.out}: {len(table)} arrays, halting {meta.total_halting}/{meta.total_run}")


def cmd_bdm(args) -> None:
    table = _load_table(args.table)
    m = _read(read_matrix, args.matrix, "matrix")
    if args.block < 1:
        raise ConfigError("--block must be >= 1")
    print(repr(bdm(m, args.block, table, args.boundary)))


def cmd_graph_complexity(args) -> None:
    table = _load_table(args.table)
    g = _read(G.read_graph, args.graph, "graph")
    search = {"mode": "exact" if args.exact else "sampled", "samples": args.samples,
              "seed": args.seed, "allow_large": args.allow_large}
    values = G.graph_measures(g, table, tuple(args.measures), args.block, args.boundary, **search)
    for m in args.measures:
        print(f"{m} {values[m]!r}")


def cmd_experiment(args) -> None:
    cfg = ExperimentConfig(Path(args.table), seed=args.seed, out_dir=Path(args.out),
                           samples=args.samples, plots=not args.no_plots)
    if args.trials is not None:
        cfg.trials = args.trials
    if args.n_max is not None:
        cfg.n_max = args.n_max
    if args.dim_max is not None:
        cfg.dim_max = args.dim_max
    run(args.name, cfg)
    print(f"wrote {args.out}/results.csv and {args.out}/report.json")


def _measures(text):
    items = tuple(t for t in text.split(",") if t)
    bad = set(items) - {"bdm", "entropy", "compress"}
    if bad or not items:
        raise argparse.ArgumentTypeError(f"unknown measures: {', '.join(sorted(bad)) or text}")
    return items


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="acss", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    ctm = sub.add_parser("ctm", help="CTM tables").add_subparsers(dest="ctm_command", required=True)
    b = ctm.add_parser("build", help="enumerate k-state turmites and write a table")
    b.add_argument("--states", type=int, required=True)
    b.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    b.add_argument("--out", required=True)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--symmetrize", action="store_true")
    b.add_argument("--allow-large", action="store_true")
    b.set_defaults(func=cmd_ctm_build)

    d = sub.add_parser("bdm", help="BDM of a matrix file")
    d.add_argument("--table", required=True)
    d.add_argument("--matrix", required=True)
    d.add_argument("--block", type=int, default=DEFAULT_BLOCK)
    d.add_argument("--boundary", choices=BOUNDARIES, default=DEFAULT_BOUNDARY)
    d.set_defaults(func=cmd_bdm)

    g = sub.add_parser("graph", help="graph measures").add_subparsers(dest="graph_command",
                                                                      required=True)
    c = g.add_parser("complexity", help="measures minimised over labellings")
    c.add_argument("--table", required=True)
    c.add_argument("--graph", required=True)
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--samples", type=int, default=G.DEFAULT_SAMPLES)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--block", type=int, default=DEFAULT_BLOCK)
    c.add_argument("--boundary", choices=BOUNDARIES, default=DEFAULT_BOUNDARY)
    c.add_argument("--measures", type=_measures, default=("bdm",))
    c.add_argument("--allow-large", action="store_true")
    c.set_defaults(func=cmd_graph_complexity)

    e = sub.add_parser("experiment", help="run a study and write CSV, JSON and SVG")
    e.add_argument("name", choices=EXPERIMENTS)
    e.add_argument("--table", required=True)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True)
    e.add_argument("--samples", type=int, default=G.DEFAULT_SAMPLES)
    e.add_argument("--trials", type=int)
    e.add_argument("--n-max", type=int)
    e.add_argument("--dim-max", type=int)
    e.add_argument("--no-plots", action="store_true")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (SizeRefused, G.SizeGuardError) as exc:
        print(f"acss: refused: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ConfigError, ValueError) as exc:
        print(f"acss: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
