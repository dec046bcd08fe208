"""Anchor derivation, anchor-guided proposals, and deterministic refinement.

Anchors are cheap reference configurations (box center, zero/unit vectors,
user-supplied defaults).  They bias proposals and the end-of-budget
refinement, but every candidate is still judged by the objective.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BudgetedEvaluator, BudgetExhausted, Problem, clip

__all__ = ["AnchorSet", "derive_anchors", "anchor_proposal", "refinement_phase"]

# Perturbation scale of the anchor blend, as a fraction of box width.
ANCHOR_SIGMA = 0.01

# Blend fractions and coordinate-probe step fractions of the deterministic
# refinement schedule (largest steps first).  The coarse levels let the
# greedy walks hop between basins of separable landscapes; the fine steps
# polish within a basin.
REFINE_GAMMAS = (0.25, 0.5, 0.75)
REFINE_STEPS = (0.7, 0.35, 0.25, 1e-2, 1e-4, 1e-6)

# A symmetric box is "wide" when every coordinate spans at least [-100, 100];
# those domains additionally get a positive-side reference at 3/4 of the
# upper bound (midway between center reference and corner, on the positive
# side).
WIDE_SYMMETRIC_MIN = 100.0
POSITIVE_SIDE_FRACTION = 0.75


@dataclass
class AnchorSet:
    """Deduplicated feasible reference points for one problem."""

    anchors: list = field(default_factory=list)

    def __len__(self):
        return len(self.anchors)

    def __iter__(self):
        return iter(self.anchors)

    def __getitem__(self, i):
        return self.anchors[i]


def derive_anchors(problem: Problem) -> AnchorSet:
    """Derive the anchor set from the problem's box and carried anchors.

    In order: box center, the zero vector and the all-ones vector when
    feasible (boundary counts as feasible), a positive-side reference
    ``3/4 * upper`` on wide symmetric domains, then any anchors the problem
    already carries.  Exact duplicates are dropped, keeping the first.
    """
    lo, hi = problem.lower, problem.upper
    candidates = [(lo + hi) / 2.0]
    zero = np.zeros(problem.dim)
    if np.all(zero >= lo) and np.all(zero <= hi):
        candidates.append(zero)
    ones = np.ones(problem.dim)
    if np.all(ones >= lo) and np.all(ones <= hi):
        candidates.append(ones)
    if np.all(lo == -hi) and np.all(hi >= WIDE_SYMMETRIC_MIN):
        candidates.append(POSITIVE_SIDE_FRACTION * hi)
    candidates.extend(problem.anchors)

    anchors: list[np.ndarray] = []
    for c in candidates:
        c = clip(np.asarray(c, dtype=float), problem)
        if not any(np.array_equal(c, a) for a in anchors):
            anchors.append(c)
    return AnchorSet(anchors)


def anchor_proposal(
    rng: np.random.Generator,
    a: np.ndarray,
    incumbent: np.ndarray,
    problem: Problem,
    sigma: float = ANCHOR_SIGMA,
) -> np.ndarray:
    """Blend an anchor toward the incumbent with a small local perturbation.

    Draws gamma uniform in [0, 1] and a per-coordinate Gaussian perturbation
    with standard deviation ``sigma`` times the box width, then clips
    ``a + gamma * (incumbent - a) + eps`` to the box.
    """
    gamma = rng.uniform(0.0, 1.0)
    eps = rng.normal(0.0, sigma * problem.width)
    return clip(a + gamma * (incumbent - a) + eps, problem)


def refinement_phase(
    evaluator: BudgetedEvaluator,
    anchors: AnchorSet,
    x: np.ndarray,
    f: float,
) -> tuple[np.ndarray, float]:
    """Spend the remaining budget on deterministic anchor and coordinate probes.

    Candidates are evaluated in a fixed, randomness-free order until the
    evaluator's budget is exhausted.  First each anchor itself is tried,
    then a pattern search over anchor blends and coordinate probes: one pass
    blends every anchor toward the current best at the fixed gamma grid,
    then probes ``best[i] +- h * width[i]`` for every coordinate at the
    current step level.  Improvements are accepted greedily, and a
    successful probe keeps walking in its direction while it improves.
    After a pass with any acceptance the search restarts at the coarsest
    step level (so cheap basin hops always precede fine polishing); after a
    clean pass it descends one level, wrapping around at the finest.  Never
    worsens the incumbent; returns the final (point, value).

    With zero remaining budget this is a no-op.
    """
    problem = evaluator.problem
    best_x = np.array(x, dtype=float)
    best_f = float(f)

    def attempt(candidate: np.ndarray) -> bool:
        nonlocal best_x, best_f
        value = evaluator.evaluate(candidate)
        if value < best_f:
            best_f = value
            best_x = clip(np.asarray(candidate, dtype=float), problem)
            return True
        return False

    def probe(i: int, step: float) -> bool:
        candidate = best_x.copy()
        candidate[i] += step
        return attempt(clip(candidate, problem))

    width = problem.width
    level = 0
    try:
        for a in anchors:
            attempt(a)
        while True:
            improved = False
            if level == 0:
                for a in anchors:
                    for gamma in REFINE_GAMMAS:
                        improved |= attempt(clip(a + gamma * (best_x - a), problem))
            h = REFINE_STEPS[level]
            for i in range(problem.dim):
                step = h * width[i]
                if probe(i, step):
                    improved = True
                    while probe(i, step):
                        pass
                elif probe(i, -step):
                    improved = True
                    while probe(i, -step):
                        pass
            level = 0 if improved else (level + 1) % len(REFINE_STEPS)
    except BudgetExhausted:
        pass
    return best_x, best_f
