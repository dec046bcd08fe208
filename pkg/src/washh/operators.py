"""The six low-level proposal behaviors selectable by the hyper-heuristic.

Each operator maps (search state, slot index, rng) to one candidate vector.
Candidates are returned unclipped; the evaluation layer projects them onto
the box.  All draws come from the single per-run generator, in a fixed
order, so proposals are reproducible given (state, slot, seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .anchors import AnchorSet, anchor_proposal
from .core import Problem

__all__ = [
    "OperatorId",
    "OperatorParams",
    "SearchState",
    "PopulationTooSmall",
    "NoAnchors",
    "propose",
    "propose_woa",
    "propose_pso",
    "propose_gwo",
    "propose_de",
    "propose_local",
    "propose_anchor",
]


class PopulationTooSmall(ValueError):
    """Operator needs more population members than are available."""


class NoAnchors(ValueError):
    """Anchor move requested with an empty anchor set."""


class OperatorId(IntEnum):
    """Selectable behaviors; integer codes are stable for serialization."""

    WOA_MOVE = 0
    PSO_MEMORY = 1
    GWO_LEADERS = 2
    DE_VARIATION = 3
    LOCAL_COORDINATE = 4
    ANCHOR_MOVE = 5


@dataclass(frozen=True)
class OperatorParams:
    """Behavior constants (canonical literature defaults)."""

    woa_spiral_prob: float = 0.5
    woa_b: float = 1.0
    pso_w: float = 0.729
    pso_c1: float = 1.494
    pso_c2: float = 1.494
    de_f: float = 0.5
    de_cr: float = 0.9
    local_sigma: float = 0.1
    local_floor: float = 1e-6
    anchor_sigma: float = 0.01


@dataclass
class SearchState:
    """Shared mutable state of one population-based run.

    ``progress`` is the fraction of the main search budget consumed; the
    whale/wolf attraction coefficient ``a = 2 (1 - progress)`` decays
    linearly with it.  ``leaders`` holds the best three individuals
    (ascending fitness).
    """

    problem: Problem
    population: np.ndarray
    fitness: np.ndarray
    x_star: np.ndarray
    f_star: float
    personal_best: np.ndarray
    personal_best_f: np.ndarray
    velocities: np.ndarray
    leaders: np.ndarray
    progress: float = 0.0

    @classmethod
    def from_population(cls, problem: Problem, population: np.ndarray, fitness: np.ndarray) -> "SearchState":
        population = np.asarray(population, dtype=float)
        fitness = np.asarray(fitness, dtype=float)
        best = int(np.argmin(fitness))
        state = cls(
            problem=problem,
            population=population,
            fitness=fitness,
            x_star=population[best].copy(),
            f_star=float(fitness[best]),
            personal_best=population.copy(),
            personal_best_f=fitness.copy(),
            velocities=np.zeros_like(population),
            leaders=np.empty((0, problem.dim)),
            progress=0.0,
        )
        state.refresh_leaders()
        return state

    @property
    def size(self) -> int:
        return self.population.shape[0]

    def refresh_leaders(self) -> None:
        """Recompute the top-3 population members by fitness (ascending)."""
        k = min(3, self.size)
        order = np.argsort(self.fitness, kind="stable")[:k]
        self.leaders = self.population[order].copy()

    def attraction(self) -> float:
        """Shared whale/wolf coefficient schedule, 2 at start, 0 at the end."""
        return 2.0 * (1.0 - self.progress)


def propose_woa(state: SearchState, i: int, rng: np.random.Generator, params: OperatorParams = OperatorParams()) -> np.ndarray:
    """Incumbent-centered spiral or encircling move.

    With probability ``woa_spiral_prob`` a logarithmic spiral around the
    incumbent; otherwise an encircling step whose reference switches to a
    random population member while ``|A| >= 1`` (exploration).
    """
    x_i = state.population[i]
    if rng.random() < params.woa_spiral_prob:
        l = rng.uniform(-1.0, 1.0)
        return state.x_star + np.abs(state.x_star - x_i) * np.exp(params.woa_b * l) * np.cos(2.0 * np.pi * l)
    a = state.attraction()
    big_a = a * (2.0 * rng.random() - 1.0)
    big_c = 2.0 * rng.random()
    if abs(big_a) >= 1.0:
        ref = state.population[rng.integers(state.size)]
    else:
        ref = state.x_star
    return ref - big_a * np.abs(big_c * ref - x_i)


def propose_pso(state: SearchState, i: int, rng: np.random.Generator, params: OperatorParams = OperatorParams()) -> np.ndarray:
    """Velocity move reusing personal and global memory; stores the new velocity."""
    x_i = state.population[i]
    r1 = rng.random(state.problem.dim)
    r2 = rng.random(state.problem.dim)
    velocity = (
        params.pso_w * state.velocities[i]
        + params.pso_c1 * r1 * (state.personal_best[i] - x_i)
        + params.pso_c2 * r2 * (state.x_star - x_i)
    )
    state.velocities[i] = velocity
    return x_i + velocity


def propose_gwo(state: SearchState, i: int, rng: np.random.Generator, params: OperatorParams = OperatorParams()) -> np.ndarray:
    """Average of three leader-guided encircling steps."""
    if state.size < 3 or state.leaders.shape[0] < 3:
        raise PopulationTooSmall("leader-averaging move needs a population of at least 3")
    x_i = state.population[i]
    a = state.attraction()
    acc = np.zeros(state.problem.dim)
    for k in range(3):
        leader = state.leaders[k]
        big_a = a * (2.0 * rng.random() - 1.0)
        big_c = 2.0 * rng.random()
        acc += leader - big_a * np.abs(big_c * leader - x_i)
    return acc / 3.0


def propose_de(state: SearchState, i: int, rng: np.random.Generator, params: OperatorParams = OperatorParams()) -> np.ndarray:
    """rand/1/bin differential move with one guaranteed mutant coordinate."""
    n = state.size
    if n < 4:
        raise PopulationTooSmall("differential move needs a population of at least 4")
    idx = rng.choice(n - 1, size=3, replace=False)
    idx[idx >= i] += 1  # skip the target slot
    r1, r2, r3 = state.population[idx]
    mutant = r1 + params.de_f * (r2 - r3)
    d = state.problem.dim
    cross = rng.random(d) < params.de_cr
    cross[rng.integers(d)] = True
    return np.where(cross, mutant, state.population[i])


def propose_local(state: SearchState, i: int, rng: np.random.Generator, params: OperatorParams = OperatorParams()) -> np.ndarray:
    """Perturb one coordinate of the incumbent with a decaying Gaussian step.

    The step scale shrinks linearly with progress down to a floor of
    ``local_floor`` times the coordinate's width, so refinement never
    collapses to zero.
    """
    j = int(rng.integers(state.problem.dim))
    width_j = state.problem.width[j]
    scale = width_j * (params.local_sigma * (1.0 - state.progress) + params.local_floor)
    x = state.x_star.copy()
    x[j] += rng.normal(0.0, scale)
    return x


def propose_anchor(state: SearchState, anchors: AnchorSet, rng: np.random.Generator, params: OperatorParams = OperatorParams()) -> np.ndarray:
    """Blend a uniformly chosen anchor toward the incumbent."""
    if len(anchors) == 0:
        raise NoAnchors("anchor move requires a non-empty anchor set")
    a = anchors[int(rng.integers(len(anchors)))]
    return anchor_proposal(rng, a, state.x_star, state.problem, sigma=params.anchor_sigma)


def propose(
    op: OperatorId,
    state: SearchState,
    i: int,
    rng: np.random.Generator,
    anchors: AnchorSet,
    params: OperatorParams = OperatorParams(),
) -> np.ndarray:
    """Dispatch one proposal for slot ``i`` using operator ``op``."""
    if op == OperatorId.WOA_MOVE:
        return propose_woa(state, i, rng, params)
    if op == OperatorId.PSO_MEMORY:
        return propose_pso(state, i, rng, params)
    if op == OperatorId.GWO_LEADERS:
        return propose_gwo(state, i, rng, params)
    if op == OperatorId.DE_VARIATION:
        return propose_de(state, i, rng, params)
    if op == OperatorId.LOCAL_COORDINATE:
        return propose_local(state, i, rng, params)
    if op == OperatorId.ANCHOR_MOVE:
        return propose_anchor(state, anchors, rng, params)
    raise ValueError(f"unknown operator {op!r}")
