"""Command line: ``otnsga run | campaign | front | verify-oa``.

Exit status is 0 on success, 1 when a run fails and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from pathlib import Path

from . import bench
from .config import ALGORITHMS
from .orthogonal import construct_orthogonal_array
from .problems import PROBLEM_NAMES, sample_true_front, write_front_file

EXIT_OK, EXIT_RUN_FAILED, EXIT_USAGE = 0, 1, 2


def _add_run_flags(p: argparse.ArgumentParser, many: bool) -> None:
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--problem", help="problem name" + (" or comma-separated list" if many else ""))
    p.add_argument("--algorithm", help="nsga2 or otnsga2" + (" (comma-separated list; default both)" if many else ""))
    p.add_argument("--pop", type=int, help="population size (even, >= 4)")
    p.add_argument("--gens", type=int, help="number of generations")
    p.add_argument("--seeds", help="seed list, e.g. 0-9 or 1,5,7" + ("" if many else " (one seed)"))
    p.add_argument("--delta", type=float, help="pruning strength (recommended 0.12-0.15)")
    p.add_argument("--k-clusters", type=int, help="k-means cluster count")
    p.add_argument("--subspaces", type=int, help="subspace count for orthogonal initialization")
    p.add_argument("--q-levels", type=int, help="orthogonal array levels (prime)")
    p.add_argument("--out", help="output directory for CSV and JSON reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otnsga", description="NSGA-II and OTNSGA-II benchmark runs.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run_flags(sub.add_parser("run", help="one seeded run"), many=False)
    _add_run_flags(sub.add_parser("campaign", help="several seeds, problems and algorithms"), many=True)

    front = sub.add_parser("front", help="print or save a reference front sample")
    front.add_argument("--problem", required=True)
    front.add_argument("--points", type=int, default=1000)
    front.add_argument("--out", help="file to write (default: stdout)")

    oa = sub.add_parser("verify-oa", help="print an orthogonal array and check its balance")
    oa.add_argument("--q-levels", type=int, default=3)
    oa.add_argument("--factors", type=int, default=4)
    return parser


def _config_from_args(args, problem=None, algorithm=None):
    return bench.parse_config(
        args.config,
        problem=problem,
        algorithm=algorithm,
        pop_size=args.pop,
        generations=args.gens,
        delta=args.delta,
        k_clusters=args.k_clusters,
        subspaces=args.subspaces,
        q_levels=args.q_levels,
    )


def _log(out: str | None, lines) -> None:
    if out is None:
        return
    stamp = time.strftime("%Y-%m-%dT%H:%M:%S")
    with open(Path(out) / "run.log", "a") as fh:
        for line in lines:
            fh.write(f"{stamp} {line}\n")


def _cmd_run(args) -> int:
    seeds = bench.parse_seeds(args.seeds) if args.seeds else None
    if seeds is not None and len(seeds) != 1:
        raise bench.ConfigError("seeds: 'run' takes exactly one seed; use 'campaign' for several")
    cfg = _config_from_args(args, args.problem, args.algorithm)
    if seeds is not None:
        cfg = bench.replace(cfg, seed=seeds[0])
    try:
        rep = bench.run_single(cfg)
    except Exception as exc:
        print(f"run failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUN_FAILED
    f = rep.final
    print(f"{cfg.problem} {cfg.algorithm} seed={cfg.seed} gd={f.gd:.6g} sp={f.sp:.6g} igd={f.igd:.6g} n={f.n_points}")
    for flag in rep.flags:
        print(f"flag: {flag}")
    if args.out:
        bench.write_reports([rep], None, args.out)
        _log(args.out, [f"run {bench.run_stem(cfg)} wall_clock={rep.wall_clock:.3f}s"])
    return EXIT_OK


def _cmd_campaign(args) -> int:
    problems = args.problem.split(",") if args.problem else None
    algorithms = args.algorithm.lower().split(",") if args.algorithm else list(ALGORITHMS)
    for a in algorithms:
        if a not in ALGORITHMS:
            raise bench.ConfigError(f"algorithm: {a!r} is not one of {{{', '.join(ALGORITHMS)}}}")
    cfg = _config_from_args(args, problems[0] if problems else None, algorithms[0])
    seeds = bench.parse_seeds(args.seeds) if args.seeds else list(range(10))
    summary, reports = bench.run_campaign(cfg, seeds, problems, algorithms)
    print("problem,algorithm,runs,gd_mean,gd_std,sp_mean,sp_std,igd_mean,igd_std")
    for r in summary.rows:
        print(f"{r.problem},{r.algorithm},{r.n_runs},{r.gd_mean:.6g},{r.gd_std:.6g},"
              f"{r.sp_mean:.6g},{r.sp_std:.6g},{r.igd_mean:.6g},{r.igd_std:.6g}")
    for p, a, s, msg in summary.failures:
        print(f"failed: {p} {a} seed={s}: {msg}", file=sys.stderr)
    if args.out:
        bench.write_reports(reports, summary, args.out, cfg)
        _log(args.out, [f"run {bench.run_stem(r.config)} wall_clock={r.wall_clock:.3f}s" for r in reports])
    return EXIT_OK if summary.ok else EXIT_RUN_FAILED


def _cmd_front(args) -> int:
    if args.problem.upper() not in PROBLEM_NAMES:
        raise bench.ConfigError(f"problem: unknown {args.problem!r}; choose from {', '.join(PROBLEM_NAMES)}")
    sample = sample_true_front(args.problem.upper(), args.points)
    if args.out:
        write_front_file(args.out, sample.points, comment=f"{args.problem.upper()} reference front ({sample.source})")
    else:
        for row in sample.points:
            print(" ".join(repr(float(v)) for v in row))
    return EXIT_OK


def _cmd_verify_oa(args) -> int:
    oa = construct_orthogonal_array(args.q_levels, args.factors)
    print(f"L{oa.rows_m}({oa.levels_q}^{oa.factors_f})")
    for row in oa.cells:
        print(" ".join(str(v) for v in row))
    ok = oa.is_balanced()
    print("balanced" if ok else "NOT balanced")
    return EXIT_OK if ok else EXIT_RUN_FAILED


COMMANDS = {"run": _cmd_run, "campaign": _cmd_campaign, "front": _cmd_front, "verify-oa": _cmd_verify_oa}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            return COMMANDS[args.command](args)
    except ValueError as exc:  # ConfigError and argument validation
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUN_FAILED


if __name__ == "__main__":
    sys.exit(main())
