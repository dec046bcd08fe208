"""Adaptive operator-selection loop with reward scoring and reserved refinement.

The controller keeps one reward score per operator, samples operators
proportionally to those scores, and credits an operator when its candidate
improves the population slot it targeted or the global incumbent.  Scores
are exponentially smoothed and floored, so no behavior ever loses all
selection probability.  The final slice of the budget goes to the
deterministic anchor/coordinate refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .anchors import AnchorSet, derive_anchors, refinement_phase
from .core import Budget, BudgetedEvaluator, Problem, clip, make_rng, uniform_in_box
from .operators import OperatorId, OperatorParams, SearchState, propose

__all__ = ["RewardScores", "WashhConfig", "RunRecord", "select_operator", "update_rewards", "run_washh"]


@dataclass
class RunRecord:
    """Outcome of one (method, function, seed) run."""

    method: str
    function: str
    seed: int
    best_value: float
    best_point: np.ndarray
    trace: np.ndarray  # best-so-far after each evaluation; length = evaluations used
    op_counts: dict[str, int] | None = None
    error: str | None = None

    @property
    def evaluations(self) -> int:
        return len(self.trace)

    def trace_pairs(self) -> list[tuple[int, float]]:
        return [(k + 1, float(v)) for k, v in enumerate(self.trace)]


@dataclass
class RewardScores:
    """Per-operator reward scores with exponential smoothing and a floor.

    Every score stays at or above ``eps_min`` after each update, so the
    normalized selection probabilities are always well defined.
    """

    alpha: float = 0.3
    eps_min: float = 0.05
    reward_slot: float = 0.5
    reward_incumbent: float = 1.0
    initial: float = 1.0
    scores: np.ndarray = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.eps_min <= 0.0:
            raise ValueError(f"eps_min must be positive, got {self.eps_min}")
        if not self.reward_incumbent >= self.reward_slot > 0.0:
            raise ValueError("rewards must satisfy reward_incumbent >= reward_slot > 0")
        self.scores = np.full(len(OperatorId), max(self.initial, self.eps_min), dtype=float)

    def probabilities(self, anchors_available: bool = True) -> np.ndarray:
        """Normalized selection probabilities; the anchor move is masked out
        (and the rest renormalized) when no anchors exist."""
        p = self.scores.copy()
        if not anchors_available:
            p[OperatorId.ANCHOR_MOVE] = 0.0
        return p / p.sum()


def select_operator(scores: RewardScores, rng: np.random.Generator, anchors_available: bool = True) -> OperatorId:
    """Sample one operator proportionally to the current reward scores."""
    cdf = np.cumsum(scores.probabilities(anchors_available))
    idx = int(np.searchsorted(cdf, rng.random(), side="right"))
    return OperatorId(min(idx, len(OperatorId) - 1))


def update_rewards(scores: RewardScores, op: OperatorId, improved_slot: bool, improved_incumbent: bool) -> RewardScores:
    """Smooth all scores toward zero and credit ``op`` with its raw reward.

    The raw reward is ``reward_incumbent`` for a new incumbent,
    ``reward_slot`` for a slot-only improvement, zero otherwise.  Unselected
    operators decay by the same smoothing; everything is floored at
    ``eps_min``.
    """
    if improved_incumbent:
        raw = scores.reward_incumbent
    elif improved_slot:
        raw = scores.reward_slot
    else:
        raw = 0.0
    s = scores.scores
    s *= 1.0 - scores.alpha
    s[op] += scores.alpha * raw
    np.maximum(s, scores.eps_min, out=s)
    return scores


@dataclass
class WashhConfig:
    """Run configuration; defaults reproduce the standard benchmark protocol.

    ``reserve=None`` resolves to ``max(3 * dim, round(0.10 * budget))``,
    capped so that initialization always fits.  The three feature switches
    exist for the ablation variants and the random hyper-heuristic baseline:
    ``adaptive_selection`` turns reward-proportional sampling into a uniform
    draw, ``anchor_init`` seeds the initial population with the anchors, and
    ``anchor_moves`` controls whether the anchor set exists at all (when
    False, the anchor operator is masked and refinement has no anchors).
    """

    pop_size: int = 30
    budget: int = 12000
    reserve: int | None = None
    alpha: float = 0.3
    eps_min: float = 0.05
    initial_score: float = 1.0
    reward_slot: float = 0.5
    reward_incumbent: float = 1.0
    params: OperatorParams = field(default_factory=OperatorParams)
    seed: int = 0
    adaptive_selection: bool = True
    anchor_init: bool = True
    anchor_moves: bool = True

    def __post_init__(self):
        if self.pop_size < 1:
            raise ValueError("pop_size must be positive")
        if self.budget < self.pop_size:
            raise ValueError("budget must cover the initial population")
        if not self.reward_incumbent >= self.reward_slot > 0.0:
            raise ValueError("rewards must satisfy reward_incumbent >= reward_slot > 0")

    def resolve_reserve(self, dim: int) -> int:
        if self.reserve is not None:
            r = self.reserve
        else:
            r = max(3 * dim, round(0.10 * self.budget))
        return int(max(0, min(r, self.budget - self.pop_size)))


def run_washh(problem: Problem, config: WashhConfig, method_name: str = "WASHH") -> RunRecord:
    """Run the full adaptive selection loop on ``problem``.

    Initializes the population from the anchors (when enabled) topped up
    with uniform draws, runs the reward-driven main loop on the budget minus
    the reserve, then spends the reserve on deterministic refinement.
    Consumes exactly ``config.budget`` evaluations.
    """
    rng = make_rng(config.seed)
    n = config.pop_size
    reserve = config.resolve_reserve(problem.dim)
    if config.anchor_moves:
        anchors = derive_anchors(problem)
    else:
        anchors = AnchorSet([])
    evaluator = BudgetedEvaluator(problem, Budget(config.budget, reserve=reserve))

    members = []
    if config.anchor_init:
        members.extend(np.array(a) for a in list(anchors)[:n])
    while len(members) < n:
        members.append(uniform_in_box(rng, problem))
    population = np.asarray(members)
    fitness = np.array([evaluator.evaluate(x) for x in population])

    state = SearchState.from_population(problem, population, fitness)
    state.x_star = np.array(evaluator.best_x)
    state.f_star = evaluator.best_f

    scores = RewardScores(
        alpha=config.alpha,
        eps_min=config.eps_min,
        reward_slot=config.reward_slot,
        reward_incumbent=config.reward_incumbent,
        initial=config.initial_score,
    )
    anchors_available = len(anchors) > 0
    selectable = [op for op in OperatorId if anchors_available or op != OperatorId.ANCHOR_MOVE]
    op_counts = np.zeros(len(OperatorId), dtype=int)
    main_total = config.budget - reserve - n

    step = 0
    while evaluator.budget.main_remaining > 0:
        i = step % n
        state.progress = step / main_total if main_total > 0 else 1.0
        if config.adaptive_selection:
            op = select_operator(scores, rng, anchors_available)
        else:
            op = selectable[int(rng.integers(len(selectable)))]
        x = clip(propose(op, state, i, rng, anchors, config.params), problem)
        f = evaluator.evaluate(x)
        improved_slot = f < state.fitness[i]
        improved_incumbent = f < state.f_star
        if improved_slot:
            state.population[i] = x
            state.fitness[i] = f
            if f < state.personal_best_f[i]:
                state.personal_best[i] = x
                state.personal_best_f[i] = f
            state.refresh_leaders()
        if improved_incumbent:
            state.x_star = x.copy()
            state.f_star = f
        if config.adaptive_selection:
            update_rewards(scores, op, improved_slot, improved_incumbent)
        op_counts[op] += 1
        step += 1

    if evaluator.remaining > 0:
        refinement_phase(evaluator, anchors, state.x_star, state.f_star)

    return RunRecord(
        method=method_name,
        function=problem.name,
        seed=config.seed,
        best_value=evaluator.best_f,
        best_point=np.array(evaluator.best_x),
        trace=evaluator.trace(),
        op_counts={op.name: int(op_counts[op]) for op in OperatorId},
    )
