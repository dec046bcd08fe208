"""The six comparison optimizers under the same budget accounting.

WOA, GWO, PSO, and DE run their canonical full-population generational
updates (one evaluation per individual per generation) with the same
behavior constants as the operator portfolio.  LWOA is WOA with occasional
long-jump restarts.  RandomHH is the hyper-heuristic loop with uniform,
reward-free operator sampling, random initialization, and no refinement
reserve.
"""

from __future__ import annotations

import math

import numpy as np

from .controller import RunRecord, WashhConfig, run_washh
from .core import Budget, BudgetedEvaluator, BudgetExhausted, Problem, clip, make_rng, uniform_in_box
from .operators import OperatorParams, SearchState, propose_de, propose_gwo, propose_pso, propose_woa

__all__ = ["METHOD_ORDER", "UnknownMethod", "normalize_method", "run_baseline", "run_method"]

# Canonical method names and their fixed ordering (also the method index used
# in seed derivation).
METHOD_ORDER = ("WASHH", "WOA", "GWO", "PSO", "DE", "LWOA", "RandomHH")

_CANONICAL = {name.lower(): name for name in METHOD_ORDER}

# Per-individual probability of replacing the whale move by a uniform re-draw.
LWOA_JUMP_PROB = 0.1


class UnknownMethod(KeyError):
    """Requested method name is not one of the compared optimizers."""


def normalize_method(name: str) -> str:
    try:
        return _CANONICAL[name.lower()]
    except KeyError:
        raise UnknownMethod(
            f"unknown method {name!r}; expected one of {', '.join(METHOD_ORDER)}"
        ) from None


def _insert_leader(leaders: np.ndarray, leader_f: np.ndarray, x: np.ndarray, f: float) -> None:
    """Keep the best-so-far leader triple sorted ascending by fitness."""
    if f >= leader_f[-1]:
        return
    pos = int(np.searchsorted(leader_f, f, side="right"))
    leaders[pos + 1 :] = leaders[pos:-1]
    leader_f[pos + 1 :] = leader_f[pos:-1]
    leaders[pos] = x
    leader_f[pos] = f


def _generational_loop(method: str, problem: Problem, config: WashhConfig) -> RunRecord:
    rng = make_rng(config.seed)
    n = config.pop_size
    params = config.params
    evaluator = BudgetedEvaluator(problem, Budget(config.budget, reserve=0))

    population = np.asarray([uniform_in_box(rng, problem) for _ in range(n)])
    fitness = np.array([evaluator.evaluate(x) for x in population])
    state = SearchState.from_population(problem, population, fitness)
    state.x_star = np.array(evaluator.best_x)
    state.f_star = evaluator.best_f

    # Best-so-far leader triple for the multi-leader update.
    order = np.argsort(fitness, kind="stable")[: min(3, n)]
    leader_f = fitness[order].copy()
    leaders = population[order].copy()

    generations = max(1, math.ceil((config.budget - n) / n))
    gen = 0
    try:
        while evaluator.remaining > 0:
            state.progress = gen / generations
            for i in range(n):
                if method == "WOA" or method == "LWOA":
                    if method == "LWOA" and rng.random() < LWOA_JUMP_PROB:
                        cand = uniform_in_box(rng, problem)
                    else:
                        cand = clip(propose_woa(state, i, rng, params), problem)
                    f = evaluator.evaluate(cand)
                    state.population[i] = cand
                    state.fitness[i] = f
                elif method == "GWO":
                    state.leaders = leaders
                    cand = clip(propose_gwo(state, i, rng, params), problem)
                    f = evaluator.evaluate(cand)
                    state.population[i] = cand
                    state.fitness[i] = f
                    _insert_leader(leaders, leader_f, cand, f)
                elif method == "PSO":
                    cand = clip(propose_pso(state, i, rng, params), problem)
                    f = evaluator.evaluate(cand)
                    state.population[i] = cand
                    state.fitness[i] = f
                    if f < state.personal_best_f[i]:
                        state.personal_best[i] = cand
                        state.personal_best_f[i] = f
                elif method == "DE":
                    cand = clip(propose_de(state, i, rng, params), problem)
                    f = evaluator.evaluate(cand)
                    if f < state.fitness[i]:
                        state.population[i] = cand
                        state.fitness[i] = f
                else:
                    raise UnknownMethod(f"no generational loop for {method!r}")
                if f < state.f_star:
                    state.x_star = cand.copy()
                    state.f_star = f
            gen += 1
    except BudgetExhausted:
        pass

    return RunRecord(
        method=method,
        function=problem.name,
        seed=config.seed,
        best_value=evaluator.best_f,
        best_point=np.array(evaluator.best_x),
        trace=evaluator.trace(),
    )


def run_baseline(method: str, problem: Problem, config: WashhConfig) -> RunRecord:
    """Run one baseline optimizer for exactly ``config.budget`` evaluations."""
    method = normalize_method(method)
    if method == "WASHH":
        raise ValueError("WASHH is not a baseline; use run_washh")
    if method == "RandomHH":
        cfg = WashhConfig(
            pop_size=config.pop_size,
            budget=config.budget,
            reserve=0,
            params=config.params,
            seed=config.seed,
            adaptive_selection=False,
            anchor_init=False,
            anchor_moves=True,
        )
        return run_washh(problem, cfg, method_name="RandomHH")
    return _generational_loop(method, problem, config)


def run_method(method: str, problem: Problem, config: WashhConfig) -> RunRecord:
    """Dispatch any of the seven compared methods."""
    method = normalize_method(method)
    if method == "WASHH":
        return run_washh(problem, config)
    return run_baseline(method, problem, config)
