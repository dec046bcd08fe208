"""Leave-one-component-out ablation on a reduced protocol.

All three variants share run seeds per (function, seed) cell, so differences
isolate the removed component rather than run-to-run noise.  The full-size
version is `washh ablate`.
"""

from washh import run_ablation, summarize

records = run_ablation(
    functions=["zakharov", "rosenbrock", "levy"],
    dim=10,
    pop_size=20,
    budget=2000,
    n_seeds=5,
    base_seed=3,
)

summary = summarize(records)
for fn in summary.functions:
    values = "  ".join(f"{m}={summary.mean[(m, fn)]:.3e}" for m in summary.methods)
    print(f"{fn:<12} {values}")

print("\nvariant ranks:", {m: round(r, 2) for m, r in summary.avg_rank.items()})
