"""Budgeted continuous black-box optimization with adaptive operator selection.

The package provides the WASHH hyper-heuristic (whale-style search with an
online reward controller over six proposal behaviors and anchor-guided
refinement), six baseline optimizers under identical budget accounting, a
ten-function benchmark suite, an experiment harness with exact-tie ranking,
and a subprocess protocol for expensive external objectives.
"""

from .anchors import AnchorSet, anchor_proposal, derive_anchors, refinement_phase
from .baselines import METHOD_ORDER, UnknownMethod, normalize_method, run_baseline, run_method
from .benchmarks import FUNCTION_ORDER, BenchmarkSpec, UnknownBenchmark, benchmark_spec, make_benchmark
from .controller import RewardScores, RunRecord, WashhConfig, run_washh, select_operator, update_rewards
from .core import Budget, BudgetedEvaluator, BudgetExhausted, Problem, clip, make_rng, uniform_in_box
from .extproc import EvaluatorDied, ExternalEvaluator, HandshakeFailed, ProtocolError
from .harness import (
    ABLATION_VARIANTS,
    ExperimentSummary,
    IncompleteTable,
    exact_tie_ranks,
    run_ablation,
    run_experiment,
    summarize,
)
from .operators import NoAnchors, OperatorId, OperatorParams, PopulationTooSmall, SearchState

__version__ = "0.1.0"

__all__ = [
    "AnchorSet",
    "anchor_proposal",
    "derive_anchors",
    "refinement_phase",
    "METHOD_ORDER",
    "UnknownMethod",
    "normalize_method",
    "run_baseline",
    "run_method",
    "FUNCTION_ORDER",
    "BenchmarkSpec",
    "UnknownBenchmark",
    "benchmark_spec",
    "make_benchmark",
    "RewardScores",
    "RunRecord",
    "WashhConfig",
    "run_washh",
    "select_operator",
    "update_rewards",
    "Budget",
    "BudgetedEvaluator",
    "BudgetExhausted",
    "Problem",
    "clip",
    "make_rng",
    "uniform_in_box",
    "EvaluatorDied",
    "ExternalEvaluator",
    "HandshakeFailed",
    "ProtocolError",
    "ABLATION_VARIANTS",
    "ExperimentSummary",
    "IncompleteTable",
    "exact_tie_ranks",
    "run_ablation",
    "run_experiment",
    "summarize",
    "NoAnchors",
    "OperatorId",
    "OperatorParams",
    "PopulationTooSmall",
    "SearchState",
]
