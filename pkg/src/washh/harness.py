"""Experiment orchestration: protocol runs, aggregation, ranks, ablation, CSV.

Seeds are derived per cell as ``base * 10**6 + method_index * 10**4 +
function_index * 10**2 + seed_index`` with indices taken from the canonical
method/function orders, so results are reproducible and independent of any
filtering or execution order.  The ablation derives its seeds without a
variant component, so all variants share seeds per (function, seed) cell.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from .baselines import METHOD_ORDER, normalize_method, run_method
from .benchmarks import FUNCTION_ORDER, make_benchmark
from .controller import RunRecord, WashhConfig, run_washh

__all__ = [
    "ABLATION_VARIANTS",
    "ExperimentSummary",
    "IncompleteTable",
    "run_seed",
    "ablation_seed",
    "run_experiment",
    "run_ablation",
    "summarize",
    "exact_tie_ranks",
    "write_results_csv",
    "read_results_csv",
    "write_trace_csv",
    "write_summary_csv",
    "read_summary_csv",
    "write_ranks_csv",
]

ABLATION_VARIANTS = ("Full", "NoAdaptiveSelection", "NoAnchor")


class IncompleteTable(ValueError):
    """A (method, function) cell needed for ranking is missing or not finite."""


def run_seed(base_seed: int, method_index: int, function_index: int, seed_index: int) -> int:
    """Collision-free per-run seed derivation for the benchmark protocol."""
    return base_seed * 10**6 + method_index * 10**4 + function_index * 10**2 + seed_index


def ablation_seed(base_seed: int, function_index: int, seed_index: int) -> int:
    """Variant-independent seeds: every ablation variant shares the same
    stream per (function, seed) cell."""
    return base_seed * 10**6 + function_index * 10**2 + seed_index


def _failed_record(method: str, function: str, seed: int, exc: Exception) -> RunRecord:
    return RunRecord(
        method=method,
        function=function,
        seed=seed,
        best_value=math.nan,
        best_point=np.empty(0),
        trace=np.empty(0),
        error=f"{type(exc).__name__}: {exc}",
    )


def _run_benchmark_cell(args) -> RunRecord:
    method, function, dim, pop_size, budget, reserve, seed = args
    try:
        problem = make_benchmark(function, dim)
        config = WashhConfig(pop_size=pop_size, budget=budget, reserve=reserve, seed=seed)
        return run_method(method, problem, config)
    except Exception as exc:  # record the failure, never drop the cell
        return _failed_record(method, function, seed, exc)


_VARIANT_FLAGS = {
    # (adaptive_selection, anchor_init, anchor_moves, force_zero_reserve)
    "Full": (True, True, True, False),
    "NoAdaptiveSelection": (False, True, True, False),
    "NoAnchor": (True, False, False, True),
}


def _run_ablation_cell(args) -> RunRecord:
    variant, function, dim, pop_size, budget, seed = args
    adaptive, anchor_init, anchor_moves, zero_reserve = _VARIANT_FLAGS[variant]
    try:
        problem = make_benchmark(function, dim)
        config = WashhConfig(
            pop_size=pop_size,
            budget=budget,
            reserve=0 if zero_reserve else None,
            seed=seed,
            adaptive_selection=adaptive,
            anchor_init=anchor_init,
            anchor_moves=anchor_moves,
        )
        return run_washh(problem, config, method_name=variant)
    except Exception as exc:
        return _failed_record(variant, function, seed, exc)


def run_tasks(worker, tasks, jobs: int | None):
    """Run ``worker`` over ``tasks`` serially or on a process pool.

    ``jobs=None`` uses all available cores.  Workers must be top-level
    functions with picklable arguments; output order follows task order.
    """
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks, chunksize=1))


def run_experiment(
    methods,
    functions,
    dim: int = 30,
    pop_size: int = 30,
    budget: int = 12000,
    n_seeds: int = 10,
    base_seed: int = 42,
    reserve: int | None = None,
    jobs: int | None = 1,
) -> list[RunRecord]:
    """Run every (method, function, seed) triple of the benchmark protocol.

    Returns records sorted by (method, function, seed); the output is
    deterministic and independent of ``jobs``.
    """
    if n_seeds < 1:
        raise ValueError("n_seeds must be at least 1")
    methods = [normalize_method(m) for m in methods]
    tasks = []
    for method in methods:
        mi = METHOD_ORDER.index(method)
        for function in functions:
            fi = FUNCTION_ORDER.index(function.lower())
            for si in range(n_seeds):
                seed = run_seed(base_seed, mi, fi, si)
                tasks.append((method, function.lower(), dim, pop_size, budget, reserve, seed))
    records = run_tasks(_run_benchmark_cell, tasks, jobs)
    return sorted(records, key=lambda r: (METHOD_ORDER.index(r.method), FUNCTION_ORDER.index(r.function), r.seed))


def run_ablation(
    functions,
    dim: int = 30,
    pop_size: int = 30,
    budget: int = 12000,
    n_seeds: int = 10,
    base_seed: int = 42,
    jobs: int | None = 1,
) -> list[RunRecord]:
    """Leave-one-component-out ablation; variants share seeds per cell."""
    tasks = []
    for variant in ABLATION_VARIANTS:
        for function in functions:
            fi = FUNCTION_ORDER.index(function.lower())
            for si in range(n_seeds):
                seed = ablation_seed(base_seed, fi, si)
                tasks.append((variant, function.lower(), dim, pop_size, budget, seed))
    records = run_tasks(_run_ablation_cell, tasks, jobs)
    order = {v: k for k, v in enumerate(ABLATION_VARIANTS)}
    return sorted(records, key=lambda r: (order[r.method], FUNCTION_ORDER.index(r.function), r.seed))


def _ordered(names, canonical) -> list[str]:
    seen = list(dict.fromkeys(names))
    known = [c for c in canonical if c in seen]
    return known + [s for s in seen if s not in known]


@dataclass
class ExperimentSummary:
    """Per-(method, function) mean/std and, when computable, rank statistics."""

    methods: list[str]
    functions: list[str]
    mean: dict = field(default_factory=dict)  # (method, function) -> float
    std: dict = field(default_factory=dict)  # (method, function) -> float
    avg_rank: dict | None = None  # method -> float
    best_or_tied: dict | None = None  # method -> int


def summarize(records) -> ExperimentSummary:
    """Aggregate records into mean/std per cell plus exact-tie rank statistics.

    The std is the population standard deviation over seeds.  Aggregation is
    order-independent: values are sorted by seed within each cell before
    averaging.  Rank statistics are omitted (None) when the method x function
    table is incomplete or contains failed runs.
    """
    methods = _ordered((r.method for r in records), METHOD_ORDER + ABLATION_VARIANTS)
    functions = _ordered((r.function for r in records), FUNCTION_ORDER)
    cells: dict = {}
    for r in records:
        cells.setdefault((r.method, r.function), []).append((r.seed, r.best_value))
    summary = ExperimentSummary(methods=methods, functions=functions)
    for key, pairs in cells.items():
        values = np.array([v for _, v in sorted(pairs, key=lambda p: p[0])])
        summary.mean[key] = float(np.mean(values))
        summary.std[key] = float(np.std(values))
    try:
        summary.avg_rank, summary.best_or_tied = exact_tie_ranks(summary.mean, methods, functions)
    except IncompleteTable:
        pass
    return summary


def exact_tie_ranks(means, methods, functions):
    """Average ranks with exact ties on the mean values.

    Per function, methods are ranked ascending by mean (minimization);
    exactly equal means share the arithmetic mean of their rank positions.
    Returns (avg_rank, best_or_tied): the rank averaged over functions per
    method, and the number of functions on which the method attains the
    minimal (possibly shared) rank.
    """
    if not methods or not functions:
        raise IncompleteTable("empty method or function list")
    rank_sum = {m: 0.0 for m in methods}
    best_count = {m: 0 for m in methods}
    for f in functions:
        col = []
        for m in methods:
            v = means.get((m, f))
            if v is None or not math.isfinite(v):
                raise IncompleteTable(f"missing or non-finite mean for method={m!r}, function={f!r}")
            col.append(v)
        ranks = rankdata(col, method="average")
        top = ranks.min()
        for m, r in zip(methods, ranks):
            rank_sum[m] += float(r)
            if r == top:
                best_count[m] += 1
    avg_rank = {m: rank_sum[m] / len(functions) for m in methods}
    return avg_rank, best_count


# ---------------------------------------------------------------------------
# CSV export/import.  Floats are serialized in scientific notation with 17
# fractional digits, which round-trips IEEE doubles exactly.


def _fmt(v: float) -> str:
    return f"{float(v):.17e}"


def _atomic_write(path, write_rows) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
        try:
            with os.fdopen(fd, "w", newline="") as handle:
                write_rows(csv.writer(handle))
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def write_results_csv(records, path) -> None:
    def rows(w):
        w.writerow(["method", "function", "seed", "best_value"])
        for r in records:
            w.writerow([r.method, r.function, r.seed, _fmt(r.best_value)])

    _atomic_write(path, rows)


def read_results_csv(path) -> list[RunRecord]:
    records = []
    with open(path, newline="") as handle:
        for row in csv.DictReader(handle):
            records.append(
                RunRecord(
                    method=row["method"],
                    function=row["function"],
                    seed=int(row["seed"]),
                    best_value=float(row["best_value"]),
                    best_point=np.empty(0),
                    trace=np.empty(0),
                )
            )
    return records


def write_trace_csv(records, path) -> None:
    def rows(w):
        w.writerow(["method", "function", "seed", "eval_index", "best_so_far"])
        for r in records:
            for k, v in enumerate(r.trace):
                w.writerow([r.method, r.function, r.seed, k + 1, _fmt(v)])

    _atomic_write(path, rows)


def write_summary_csv(summary: ExperimentSummary, path) -> None:
    def rows(w):
        w.writerow(["method", "function", "mean", "std"])
        for m in summary.methods:
            for f in summary.functions:
                if (m, f) in summary.mean:
                    w.writerow([m, f, _fmt(summary.mean[(m, f)]), _fmt(summary.std[(m, f)])])

    _atomic_write(path, rows)


def read_summary_csv(path):
    """Read a summary CSV back into (means, methods, functions)."""
    means: dict = {}
    methods: list[str] = []
    functions: list[str] = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or not {"method", "function", "mean"} <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected columns method,function,mean[,std]")
        for row in reader:
            m, f = row["method"], row["function"]
            means[(m, f)] = float(row["mean"])
            if m not in methods:
                methods.append(m)
            if f not in functions:
                functions.append(f)
    return means, methods, functions


def write_ranks_csv(summary: ExperimentSummary, path) -> None:
    if summary.avg_rank is None or summary.best_or_tied is None:
        raise IncompleteTable("summary has no rank statistics")

    def rows(w):
        w.writerow(["method", "avg_rank", "best_or_tied"])
        for m in summary.methods:
            w.writerow([m, f"{summary.avg_rank[m]:.10g}", summary.best_or_tied[m]])

    _atomic_write(path, rows)
