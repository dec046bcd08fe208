"""The ten continuous test functions with their standard domains and optima.

All functions follow the standard literature definitions and are deterministic
and total on their boxes.  ``known_opt_point``/``known_opt_value`` are ``None``
where no closed form exists (Michalewicz at d >= 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Problem

__all__ = ["BenchmarkSpec", "UnknownBenchmark", "FUNCTION_ORDER", "make_benchmark", "benchmark_spec"]

# Steepness of the Michalewicz ridges; the dominant convention.
MICHALEWICZ_M = 10

# Offset constant chosen so the Schwefel residual at 420.9687·ones matches the
# standard 3.818e-4 value for d = 30.
SCHWEFEL_CONST = 418.9829


class UnknownBenchmark(KeyError):
    """Requested benchmark name is not in the suite."""


def sphere(x):
    return float(np.sum(x * x))


def bent_cigar(x):
    return float(x[0] * x[0] + 1e6 * np.sum(x[1:] * x[1:]))


def zakharov(x):
    s1 = np.sum(x * x)
    s2 = 0.5 * np.sum(np.arange(1, x.size + 1) * x)
    return float(s1 + s2**2 + s2**4)


def rosenbrock(x):
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def rastrigin(x):
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def ackley(x):
    return float(
        -20.0 * np.exp(-0.2 * np.sqrt(np.mean(x * x)))
        - np.exp(np.mean(np.cos(2.0 * np.pi * x)))
        + 20.0
        + np.e
    )


def griewank(x):
    i = np.arange(1, x.size + 1)
    return float(np.sum(x * x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def schwefel(x):
    return float(SCHWEFEL_CONST * x.size - np.sum(x * np.sin(np.sqrt(np.abs(x)))))


def levy(x):
    w = 1.0 + (x - 1.0) / 4.0
    head = np.sin(np.pi * w[0]) ** 2
    mid = np.sum((w[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * w[:-1] + 1.0) ** 2))
    tail = (w[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * w[-1]) ** 2)
    return float(head + mid + tail)


def michalewicz(x):
    i = np.arange(1, x.size + 1)
    return float(-np.sum(np.sin(x) * np.sin(i * x * x / np.pi) ** (2 * MICHALEWICZ_M)))


@dataclass(frozen=True)
class BenchmarkSpec:
    """Name, domain, and (where known) the optimum of one test function."""

    name: str
    func: Callable[[np.ndarray], float]
    lower: float
    upper: float
    opt_point: float | None  # every coordinate of the optimizer, or None
    opt_value: float | None  # objective value there, or None

    def known_opt_point(self, dim: int) -> np.ndarray | None:
        if self.opt_point is None:
            return None
        return np.full(dim, self.opt_point)


_SUITE = {
    "sphere": BenchmarkSpec("sphere", sphere, -100.0, 100.0, 0.0, 0.0),
    "bent_cigar": BenchmarkSpec("bent_cigar", bent_cigar, -100.0, 100.0, 0.0, 0.0),
    "zakharov": BenchmarkSpec("zakharov", zakharov, -5.0, 10.0, 0.0, 0.0),
    "rosenbrock": BenchmarkSpec("rosenbrock", rosenbrock, -30.0, 30.0, 1.0, 0.0),
    "rastrigin": BenchmarkSpec("rastrigin", rastrigin, -5.12, 5.12, 0.0, 0.0),
    "ackley": BenchmarkSpec("ackley", ackley, -32.768, 32.768, 0.0, 4.4409e-16),
    "griewank": BenchmarkSpec("griewank", griewank, -600.0, 600.0, 0.0, 0.0),
    "schwefel": BenchmarkSpec("schwefel", schwefel, -500.0, 500.0, 420.9687, 3.8183e-04),
    "levy": BenchmarkSpec("levy", levy, -10.0, 10.0, 1.0, 1.4998e-32),
    "michalewicz": BenchmarkSpec("michalewicz", michalewicz, 0.0, np.pi, None, None),
}

# Canonical suite order; also fixes the function index used in seed derivation.
FUNCTION_ORDER = list(_SUITE)


def benchmark_spec(name: str) -> BenchmarkSpec:
    try:
        return _SUITE[name.lower()]
    except KeyError:
        raise UnknownBenchmark(
            f"unknown benchmark {name!r}; expected one of {', '.join(FUNCTION_ORDER)}"
        ) from None


def make_benchmark(name: str, dim: int) -> Problem:
    """Build the named test function at dimension ``dim`` as a :class:`Problem`."""
    spec = benchmark_spec(name)
    if dim < 2:
        raise ValueError(f"benchmark dimension must be >= 2, got {dim}")
    return Problem(
        dim=dim,
        lower=np.full(dim, spec.lower),
        upper=np.full(dim, spec.upper),
        objective=spec.func,
        name=spec.name,
    )
