"""Tune SVC hyperparameters through the subprocess protocol.

Requires the companion evaluator package (``pip install -e ./svc_evaluator``).
Each evaluation trains an RBF-kernel classifier on the breast cancer
diagnostic dataset and returns validation log loss; the evaluator's
handshake carries the default and experience-based settings as anchors.

The full study is `washh hpo --evaluator-cmd "python -m svc_evaluator"`.
"""

import sys

from washh import ExternalEvaluator, WashhConfig, run_washh

with ExternalEvaluator([sys.executable, "-m", "svc_evaluator"], timeout=60.0, name="svc") as child:
    problem = child.handshake()
    print("anchors (log10 C, log10 gamma):", [a.round(4).tolist() for a in problem.anchors])
    record = run_washh(problem, WashhConfig(pop_size=10, budget=80, seed=0))

log_c, log_gamma = record.best_point
print(f"best validation log loss: {record.best_value:.6f}")
print(f"best configuration: C = {10 ** log_c:.4g}, gamma = {10 ** log_gamma:.4g}")
