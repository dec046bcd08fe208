"""Small-scale method comparison with mean/std aggregation and tie-aware ranks.

This is the benchmark protocol in miniature; the CLI command

    washh bench --dim 30 --budget 12000 --seeds 10

runs the full-size version and writes the CSV artifacts.
"""

from washh import METHOD_ORDER, run_experiment, summarize

records = run_experiment(
    methods=METHOD_ORDER,
    functions=["rastrigin", "levy", "michalewicz"],
    dim=10,
    pop_size=20,
    budget=2000,
    n_seeds=5,
    base_seed=1,
)

summary = summarize(records)

header = f"{'function':<14}" + "".join(f"{m:>14}" for m in summary.methods)
print(header)
for fn in summary.functions:
    row = "".join(f"{summary.mean[(m, fn)]:>14.3e}" for m in summary.methods)
    print(f"{fn:<14}{row}")

print("\naverage ranks (exact ties share positions):")
for method in sorted(summary.methods, key=lambda m: summary.avg_rank[m]):
    print(f"  {method:<10} rank {summary.avg_rank[method]:.2f}   best-or-tied on {summary.best_or_tied[method]}")
