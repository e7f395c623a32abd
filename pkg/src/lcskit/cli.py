"""Command-line front end: solve, classify, generate, bench, stats.

Defaults follow the tuned constants; the worker count for batch runs can
be set with --workers or the LCSKIT_WORKERS environment variable.
"""

from __future__ import annotations

import argparse
import glob
import json
import os
import sys
import time

from scipy.stats import chi2

from .bench import (
    ALL_SOLVERS,
    SCENARIO_BETAS,
    Scenario,
    SolverConfig,
    average_lengths,
    friedman_ranks,
    parse_report,
    report,
    results_matrix,
    run_bench,
    solve_named,
)
from .classifier import S2dConfig, s2d_classify
from .datagen import GenConfig, derive_seed, generate_set
from .heuristics import HeuristicParams
from .hyper import TeHhConfig, UbHhConfig
from .strings import InstanceFormatError, parse_instance, write_instance


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("LCSKIT_WORKERS", "1")))
    except ValueError:
        return 1


def _load(path: str, fmt: str):
    with open(path, "r", encoding="ascii") as fh:
        return parse_instance(fh.read(), fmt)


def _solver_config(args: argparse.Namespace, beta: int) -> SolverConfig:
    classifier = S2dConfig(ei=args.ei, tr=args.tr, rng_seed=args.seed)
    ub_cfg = UbHhConfig(theta1=args.theta1, theta2=args.theta2, classifier=classifier)
    beta_h = args.beta_h if args.beta_h is not None else min(50, beta)
    return SolverConfig(
        params=HeuristicParams(),
        ub_hh=ub_cfg,
        te_hh=TeHhConfig(beta_h=beta_h),
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args: argparse.Namespace) -> int:
    s = _load(args.instance, args.format)
    cfg = _solver_config(args, args.beta)
    length, sequence, dispatch, secs, select_secs = solve_named(
        s, args.heuristic, args.beta, cfg, seed=args.seed
    )
    if args.json:
        payload = {
            "instance": args.instance,
            "heuristic": args.heuristic,
            "beta": args.beta,
            "seed": args.seed,
            "length": length,
            "sequence": sequence,
            "dispatch": dispatch,
            "time_ms": secs * 1000.0,
            "select_ms": select_secs * 1000.0,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [
            f"instance: {args.instance}",
            f"heuristic: {args.heuristic}",
            f"beta: {args.beta}",
        ]
        if dispatch:
            lines.append(f"dispatch: {dispatch}")
        lines += [
            f"length: {length}",
            f"sequence: {sequence}",
            f"time_ms: {secs * 1000.0:.3f}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    s = _load(args.instance, args.format)
    cfg = S2dConfig(
        ei=args.ei, tr=args.tr, iterations=args.iterations, rng_seed=args.seed
    )
    t0 = time.perf_counter()
    label = s2d_classify(s, cfg)
    ms = (time.perf_counter() - t0) * 1000.0
    if args.json:
        payload = {
            "instance": args.instance,
            "label": label.kind.value,
            "sim_s": label.sim_s,
            "time_ms": ms,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(
            f"instance: {args.instance}\nlabel: {label.kind.value}\n"
            f"sim_s: {label.sim_s:.4f}\ntime_ms: {ms:.3f}\n",
            args.out,
        )
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    names = []
    for idx in range(args.count):
        cfg = GenConfig(
            m=args.m,
            base_len=args.length,
            n=args.n,
            p_mut=args.p_mut,
            seed=derive_seed(args.seed, idx),
        )
        s = generate_set(cfg)
        name = (
            f"gen_m{args.m}_l{args.length}_n{args.n}"
            f"_p{args.p_mut:g}_s{args.seed}_{idx:03d}.txt"
        )
        path = os.path.join(args.out_dir, name)
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(write_instance(s, args.format))
        names.append(name)
    sys.stdout.write("".join(n + "\n" for n in names))
    return 0


def _expand_paths(patterns: list[str]) -> list[str]:
    paths: list[str] = []
    for pat in patterns:
        hits = sorted(glob.glob(pat))
        paths.extend(hits if hits else [pat])
    return paths


def cmd_bench(args: argparse.Namespace) -> int:
    heuristics = [h.strip() for h in args.heuristics.split(",") if h.strip()]
    beta = args.beta if args.beta is not None else SCENARIO_BETAS[args.scenario]
    scenario: Scenario | int
    scenario = Scenario.named(args.scenario) if args.beta is None else beta
    cfg = _solver_config(args, beta)

    instances = []
    failures = []
    for path in _expand_paths(args.instances):
        try:
            instances.append((os.path.basename(path), _load(path, args.format)))
        except (OSError, InstanceFormatError) as exc:
            failures.append((path, str(exc)))
    for path, err in failures:
        sys.stderr.write(f"skipped {path}: {err}\n")
    if not instances:
        sys.stderr.write("no readable instances\n")
        return 1

    records = run_bench(
        instances, heuristics, scenario, seed=args.seed, cfg=cfg, workers=args.workers
    )
    _emit(report(records, args.out_format), args.out)
    for name, avg in sorted(average_lengths(records).items()):
        sys.stderr.write(f"average {name}: {avg:.2f}\n")
    if args.fig_dir:
        from .plots import render_bench_figures

        for path in render_bench_figures(records, args.fig_dir):
            sys.stderr.write(f"figure: {path}\n")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    with open(args.results, "r", encoding="ascii") as fh:
        text = fh.read()
    fmt = args.results_format
    if fmt == "auto":
        fmt = "json" if args.results.endswith(".json") else "csv"
    records = parse_report(text, fmt)
    matrix, _instances, methods = results_matrix(records)
    mean_ranks, stat = friedman_ranks(matrix)
    k = len(methods)
    p_value = float(chi2.sf(stat, k - 1))

    if args.out_format == "json":
        payload = {
            "methods": methods,
            "mean_ranks": [float(r) for r in mean_ranks],
            "statistic": stat,
            "p_value": p_value,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = ["method,mean_rank"]
        lines += [f"{m},{r:.6f}" for m, r in zip(methods, mean_ranks)]
        lines.append(f"statistic,{stat:.6f}")
        lines.append(f"p_value,{p_value:.6g}")
        _emit("\n".join(lines) + "\n", args.out)
    if args.fig_dir:
        from .plots import plot_mean_ranks

        os.makedirs(args.fig_dir, exist_ok=True)
        path = plot_mean_ranks(
            list(mean_ranks), methods, os.path.join(args.fig_dir, "mean_ranks.png")
        )
        sys.stderr.write(f"figure: {path}\n")
    return 0


def _add_common_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--beta-h", type=int, default=None,
                   help="trial beam width for te-hh (default: min(50, beta))")
    p.add_argument("--ei", type=int, default=None,
                   help="classifier window length (default: 10 for m<=2 else 20)")
    p.add_argument("--tr", type=float, default=5.0, help="classifier threshold")
    p.add_argument("--theta1", type=float, default=0.54)
    p.add_argument("--theta2", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcskit",
        description="Beam-search solvers, set classification and heuristic "
        "dispatch for the multiple-string LCS problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("instance")
    p.add_argument("--format", choices=["header", "raw"], default="header")
    p.add_argument("--heuristic", choices=ALL_SOLVERS, default="ub-hh")
    p.add_argument("--beta", type=int, default=200)
    _add_common_solver_flags(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="label one instance")
    p.add_argument("instance")
    p.add_argument("--format", choices=["header", "raw"], default="header")
    p.add_argument("--ei", type=int, default=None)
    p.add_argument("--tr", type=float, default=5.0)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="write generated instance files")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-mut", type=float, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["header", "raw"], default="header")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run a solver batch over instances")
    p.add_argument("instances", nargs="+", help="instance files or globs")
    p.add_argument("--format", choices=["header", "raw"], default="header")
    p.add_argument("--heuristics", "--heuristic", default=",".join(ALL_SOLVERS),
                   help="comma-separated solver list")
    p.add_argument("--scenario", choices=sorted(SCENARIO_BETAS),
                   default="balanced-time-quality")
    p.add_argument("--beta", type=int, default=None,
                   help="override the scenario's beam width")
    _add_common_solver_flags(p)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--out-format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--fig-dir", default=None,
                   help="also render figures into this directory")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="Friedman rank analysis of a results file")
    p.add_argument("--results", required=True)
    p.add_argument("--results-format", choices=["auto", "csv", "json"], default="auto")
    p.add_argument("--out-format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--fig-dir", default=None)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
