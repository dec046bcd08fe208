"""Problem definition, box handling, budget-accounted evaluation, seeded randomness.

Every optimizer in this package evaluates candidates through a
:class:`BudgetedEvaluator`, so initialization, operator trials, and
refinement probes all draw from one shared budget and one best-so-far trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "BudgetExhausted",
    "Problem",
    "Budget",
    "BudgetedEvaluator",
    "make_rng",
    "clip",
    "uniform_in_box",
]


class BudgetExhausted(Exception):
    """Raised when an evaluation is requested after the budget is spent."""


def make_rng(seed: int) -> np.random.Generator:
    """Return a deterministic generator for ``seed``.

    Uses the counter-based Philox bit generator, so identical seeds yield
    identical draw sequences on every platform.  Independent runs get
    independent streams by deriving distinct integer seeds (see
    ``harness.run_seed``), never by sharing a generator.
    """
    return np.random.Generator(np.random.Philox(seed))


@dataclass
class Problem:
    """A box-constrained minimization problem.

    Parameters
    ----------
    dim : int
        Dimensionality d of the search space.
    lower, upper : array_like of shape (d,)
        Box bounds; ``lower[i] < upper[i]`` for every coordinate.
    objective : callable
        Black-box map from a d-vector to a scalar.
    anchors : sequence of d-vectors, optional
        Reference configurations known before the search starts (defaults,
        previously good settings).  Must lie inside the box.
    name : str, optional
        Identifier used in run records and CSV output.
    """

    dim: int
    lower: np.ndarray
    upper: np.ndarray
    objective: Callable[[np.ndarray], float]
    anchors: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        self.lower = np.broadcast_to(np.asarray(self.lower, dtype=float), (self.dim,)).copy()
        self.upper = np.broadcast_to(np.asarray(self.upper, dtype=float), (self.dim,)).copy()
        if not np.all(self.lower < self.upper):
            raise ValueError("lower bound must be strictly below upper bound in every coordinate")
        self.anchors = [np.asarray(a, dtype=float) for a in self.anchors]
        for a in self.anchors:
            if a.shape != (self.dim,):
                raise ValueError(f"anchor shape {a.shape} does not match dim {self.dim}")
            if np.any(a < self.lower) or np.any(a > self.upper):
                raise ValueError("anchor lies outside the feasible box")

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower


def clip(x: np.ndarray, problem: Problem) -> np.ndarray:
    """Project ``x`` onto the feasible box, coordinate-wise."""
    return np.minimum(problem.upper, np.maximum(problem.lower, x))


def uniform_in_box(rng: np.random.Generator, problem: Problem) -> np.ndarray:
    """Draw a point with each coordinate independently uniform in its bounds."""
    return rng.uniform(problem.lower, problem.upper)


@dataclass
class Budget:
    """Evaluation budget with an optional end-of-run refinement reserve.

    ``reserve`` is counted within ``total``: the main search phase may use
    ``total - reserve`` evaluations and the refinement phase the rest.
    """

    total: int
    used: int = 0
    reserve: int = 0

    def __post_init__(self):
        if self.total < 1:
            raise ValueError(f"budget total must be positive, got {self.total}")
        if not 0 <= self.reserve < self.total:
            raise ValueError(f"reserve must satisfy 0 <= reserve < total, got {self.reserve}")
        if not 0 <= self.used <= self.total:
            raise ValueError("used must lie in [0, total]")

    @property
    def remaining(self) -> int:
        return self.total - self.used

    @property
    def main_remaining(self) -> int:
        """Evaluations left before the refinement reserve begins."""
        return max(0, self.total - self.reserve - self.used)


class BudgetedEvaluator:
    """Serial, budget-accounted access to a problem's objective.

    Candidates are clipped to the box before evaluation.  Non-finite
    candidates and non-finite objective returns are recorded as ``+inf``
    fitness (they consume budget but can never become the incumbent).
    One trace row (current best-so-far) is appended per evaluation, so the
    trace length always equals the number of evaluations used.
    """

    def __init__(self, problem: Problem, budget: Budget):
        self.problem = problem
        self.budget = budget
        self.best_x: np.ndarray | None = None
        self.best_f: float = math.inf
        self._trace: list[float] = []

    def evaluate(self, x: np.ndarray) -> float:
        """Evaluate ``clip(x)``; raise :class:`BudgetExhausted` if no budget remains."""
        if self.budget.used >= self.budget.total:
            raise BudgetExhausted(f"budget of {self.budget.total} evaluations exhausted")
        x = np.asarray(x, dtype=float)
        if np.all(np.isfinite(x)):
            xc = clip(x, self.problem)
            f = float(self.problem.objective(xc))
            if not math.isfinite(f):
                f = math.inf
        else:
            # Rejected candidate: worst possible fitness, objective not called.
            xc = x
            f = math.inf
        self.budget.used += 1
        if f < self.best_f or self.best_x is None:
            self.best_f = f
            self.best_x = np.array(xc, dtype=float)
        self._trace.append(self.best_f)
        return f

    @property
    def used(self) -> int:
        return self.budget.used

    @property
    def remaining(self) -> int:
        return self.budget.remaining

    def trace(self) -> np.ndarray:
        """Best-so-far value after each evaluation (row k is evaluation k+1)."""
        return np.asarray(self._trace, dtype=float)

    def trace_pairs(self) -> list[tuple[int, float]]:
        """Trace as (eval_index, best_so_far) pairs with 1-based indices."""
        return [(k + 1, v) for k, v in enumerate(self._trace)]
