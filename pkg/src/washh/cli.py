"""Command-line entry point: bench, ablate, ranks, and hpo workflows."""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .baselines import METHOD_ORDER, UnknownMethod, normalize_method, run_method
from .benchmarks import FUNCTION_ORDER, UnknownBenchmark, benchmark_spec
from .controller import RunRecord, WashhConfig
from .extproc import EvaluatorDied, ExternalEvaluator, HandshakeFailed, ProtocolError
from .harness import (
    ExperimentSummary,
    IncompleteTable,
    exact_tie_ranks,
    run_ablation,
    run_experiment,
    run_seed,
    run_tasks,
    summarize,
    write_ranks_csv,
    write_results_csv,
    write_summary_csv,
    write_trace_csv,
)

HPO_FUNCTION = "hpo"


def _parse_methods(value: str, parser: argparse.ArgumentParser) -> list[str]:
    if value.strip().lower() == "all":
        return list(METHOD_ORDER)
    try:
        return [normalize_method(part) for part in value.split(",") if part.strip()]
    except UnknownMethod as exc:
        parser.error(str(exc))


def _parse_functions(value: str, parser: argparse.ArgumentParser) -> list[str]:
    if value.strip().lower() == "all":
        return list(FUNCTION_ORDER)
    names = []
    for part in value.split(","):
        part = part.strip().lower()
        if not part:
            continue
        try:
            names.append(benchmark_spec(part).name)
        except UnknownBenchmark as exc:
            parser.error(str(exc))
    return names


def _print_summary_table(summary: ExperimentSummary) -> None:
    width = max(12, *(len(m) for m in summary.methods)) + 2
    header = f"{'function':<14}{'metric':<8}" + "".join(f"{m:>{width}}" for m in summary.methods)
    print(header)
    for f in summary.functions:
        ave = "".join(f"{summary.mean.get((m, f), math.nan):>{width}.4E}" for m in summary.methods)
        std = "".join(f"{summary.std.get((m, f), math.nan):>{width}.4E}" for m in summary.methods)
        print(f"{f:<14}{'ave':<8}{ave}")
        print(f"{'':<14}{'std':<8}{std}")


def _print_rank_table(summary: ExperimentSummary) -> None:
    if summary.avg_rank is None:
        print("rank table unavailable (incomplete results)")
        return
    print(f"{'method':<20}{'avg_rank':>10}{'best_or_tied':>14}")
    for m in sorted(summary.methods, key=lambda m: summary.avg_rank[m]):
        print(f"{m:<20}{summary.avg_rank[m]:>10.2f}{summary.best_or_tied[m]:>14d}")


def _report_failures(records: list[RunRecord]) -> int:
    failures = [r for r in records if r.error is not None]
    for r in failures:
        print(f"FAILED {r.method}/{r.function}/seed={r.seed}: {r.error}", file=sys.stderr)
    return len(failures)


def _export_all(records, summary, out_dir: str, prefix: str = "") -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_results_csv(records, os.path.join(out_dir, f"{prefix}results.csv"))
    write_trace_csv(records, os.path.join(out_dir, f"{prefix}trace.csv"))
    write_summary_csv(summary, os.path.join(out_dir, f"{prefix}summary.csv"))
    if summary.avg_rank is not None:
        write_ranks_csv(summary, os.path.join(out_dir, f"{prefix}ranks.csv"))


def cmd_bench(args, parser) -> int:
    methods = _parse_methods(args.methods, parser)
    functions = _parse_functions(args.functions, parser)
    records = run_experiment(
        methods,
        functions,
        dim=args.dim,
        pop_size=args.pop,
        budget=args.budget,
        n_seeds=args.seeds,
        base_seed=args.base_seed,
        jobs=args.jobs,
    )
    summary = summarize(records)
    _export_all(records, summary, args.out)
    _print_summary_table(summary)
    print()
    _print_rank_table(summary)
    return 1 if _report_failures(records) else 0


def cmd_ablate(args, parser) -> int:
    functions = _parse_functions(args.functions, parser)
    records = run_ablation(
        functions,
        dim=args.dim,
        pop_size=args.pop,
        budget=args.budget,
        n_seeds=args.seeds,
        base_seed=args.base_seed,
        jobs=args.jobs,
    )
    summary = summarize(records)
    _export_all(records, summary, args.out, prefix="ablation_")
    _print_summary_table(summary)
    print()
    _print_rank_table(summary)
    return 1 if _report_failures(records) else 0


def cmd_ranks(args, parser) -> int:
    from .harness import read_summary_csv

    try:
        means, methods, functions = read_summary_csv(args.summary)
        avg_rank, best_or_tied = exact_tie_ranks(means, methods, functions)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{'method':<20}{'avg_rank':>10}{'best_or_tied':>14}")
    for m in sorted(methods, key=lambda m: avg_rank[m]):
        print(f"{m:<20}{avg_rank[m]:>10.2f}{best_or_tied[m]:>14d}")
    return 0


def _run_hpo_cell(task) -> RunRecord:
    method, evaluator_cmd, budget, pop_size, seed, timeout = task
    try:
        with ExternalEvaluator(evaluator_cmd, timeout=timeout, name=HPO_FUNCTION) as child:
            problem = child.handshake()
            config = WashhConfig(pop_size=pop_size, budget=budget, seed=seed)
            return run_method(method, problem, config)
    except (HandshakeFailed, ProtocolError, EvaluatorDied, OSError) as exc:
        return RunRecord(
            method=method,
            function=HPO_FUNCTION,
            seed=seed,
            best_value=math.nan,
            best_point=np.empty(0),
            trace=np.empty(0),
            error=f"{type(exc).__name__}: {exc}",
        )


def cmd_hpo(args, parser) -> int:
    methods = _parse_methods(args.methods, parser)
    tasks = []
    for method in methods:
        mi = METHOD_ORDER.index(method)
        for si in range(args.seeds):
            seed = run_seed(args.base_seed, mi, 0, si)
            tasks.append((method, args.evaluator_cmd, args.budget, args.pop, seed, args.timeout))
    records = run_tasks(_run_hpo_cell, tasks, args.jobs)
    records.sort(key=lambda r: (METHOD_ORDER.index(r.method), r.seed))
    summary = summarize(records)
    _export_all(records, summary, args.out, prefix="hpo_")
    _print_summary_table(summary)
    return 1 if _report_failures(records) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="washh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_protocol_args(p, budget_default):
        p.add_argument("--dim", type=int, default=30)
        p.add_argument("--pop", type=int, default=30)
        p.add_argument("--budget", type=int, default=budget_default)
        p.add_argument("--seeds", type=int, default=10)
        p.add_argument("--base-seed", type=int, default=42)
        p.add_argument("--out", default="results", help="output directory for CSV artifacts")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")

    bench = sub.add_parser("bench", help="run the benchmark comparison protocol")
    add_protocol_args(bench, 12000)
    bench.add_argument("--methods", default="all", help="comma-separated method names or 'all'")
    bench.add_argument("--functions", default="all", help="comma-separated function names or 'all'")

    ablate = sub.add_parser("ablate", help="run the leave-one-component-out ablation")
    add_protocol_args(ablate, 12000)
    ablate.add_argument("--functions", default="all")

    ranks = sub.add_parser("ranks", help="print exact-tie average ranks from a summary CSV")
    ranks.add_argument("summary", help="summary CSV with method,function,mean columns")

    hpo = sub.add_parser("hpo", help="optimize an external evaluator subprocess")
    hpo.add_argument("--evaluator-cmd", required=True, help="command line that starts the evaluator")
    hpo.add_argument("--budget", type=int, default=300)
    hpo.add_argument("--pop", type=int, default=30)
    hpo.add_argument("--seeds", type=int, default=10)
    hpo.add_argument("--base-seed", type=int, default=42)
    hpo.add_argument("--methods", default="all")
    hpo.add_argument("--timeout", type=float, default=30.0, help="per-evaluation timeout in seconds")
    hpo.add_argument("--out", default="results")
    hpo.add_argument("--jobs", type=int, default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"bench": cmd_bench, "ablate": cmd_ablate, "ranks": cmd_ranks, "hpo": cmd_hpo}
    return handlers[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
