"""Random potentials for property checks and the verification suites."""

from __future__ import annotations

import numpy as np

from .scattering import PiecewisePotential

ACCEPTANCE_SEED = 20261017


def random_potential(
    rng: np.random.Generator,
    max_layers: int = 5,
    max_abs_value: float = 10.0,
    max_support: float = 5.0,
    real: bool = False,
) -> PiecewisePotential:
    """Draw 1..max_layers layers; values uniform in the disk (or interval) of radius ``max_abs_value``."""
    n = int(rng.integers(1, max_layers + 1))
    support = rng.uniform(0.1, max_support)
    widths = rng.dirichlet(np.ones(n)) * support
    if real:
        values = rng.uniform(-max_abs_value, max_abs_value, n).astype(complex)
    else:
        radius = max_abs_value * np.sqrt(rng.uniform(0.0, 1.0, n))
        values = radius * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
    left = rng.uniform(-max_support / 2, 0.0)
    return PiecewisePotential(left, tuple(zip(widths.tolist(), values.tolist())))


def random_cases(
    count: int, seed: int = ACCEPTANCE_SEED, real: bool = False, k_range=(0.1, 20.0)
) -> list[tuple[PiecewisePotential, float]]:
    """Reproducible list of ``(potential, k)`` pairs."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(count):
        p = random_potential(rng, real=real)
        cases.append((p, float(rng.uniform(*k_range))))
    return cases
