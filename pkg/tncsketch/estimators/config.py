"""
Sketch size and repetition count derivation, plus the variance bounds.

For a target (epsilon, delta) one repetition must fail with probability
at most a constant (Chebyshev), and the median of R repetitions then fails
with probability at most delta:

- general: m >= 3^t / (p0 eps^2)
- acyclic: m >= max(16 t, 32 t / (p0 eps^2))
- R = ceil(c ln(1 / delta))

with p0 the per-repetition failure probability and c the median constant.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from tncsketch.const import (
    ACYCLIC_LINEARIZATION_FACTOR,
    ACYCLIC_VARIANCE_FACTOR,
    DEFAULT_CHEBYSHEV_FAILURE,
    DEFAULT_MEDIAN_CONSTANT,
    DEFAULT_REPETITIONS,
    DEFAULT_SKETCH_SIZE,
    LOGGER,
    METHOD_ACYCLIC,
    METHOD_GENERAL,
)
from tncsketch.data import EstimatorConfig
from tncsketch.exceptions import ConfigError
from tncsketch.fft import next_power_of_two


class SketchBudget(NamedTuple):
    """Resolved sketch size and repetition count."""

    m: int
    repetitions: int


def derive_sketch_size(
    epsilon: float, contractions: int, method: str, *, failure: float = DEFAULT_CHEBYSHEV_FAILURE
) -> int:
    """Return the power-of-two sketch size for a target epsilon."""
    if epsilon <= 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}", code="invalid_epsilon")
    t = contractions
    if method == METHOD_GENERAL:
        required = 3.0**t / (failure * epsilon**2)
    elif method == METHOD_ACYCLIC:
        required = max(ACYCLIC_LINEARIZATION_FACTOR * t, ACYCLIC_VARIANCE_FACTOR * t / (failure * epsilon**2))
    else:
        raise ConfigError(f"No sketch size for method {method!r}", code="invalid_method")
    return next_power_of_two(required)


def derive_repetitions(delta: float, *, constant: float = DEFAULT_MEDIAN_CONSTANT) -> int:
    """Return R = ceil(c ln(1 / delta)), at least 1."""
    if not 0 < delta < 1:
        raise ConfigError(f"delta must lie in (0, 1), got {delta}", code="invalid_delta")
    return max(1, math.ceil(constant * math.log(1.0 / delta)))


def split_budget(epsilon: float, delta: float, components: int) -> tuple[float, float]:
    """
    Share (epsilon, delta) among independently estimated components.

    The product of k estimates each within relative error eps_c stays within
    (1 + eps_c)^k - 1 = eps, and a union bound gives delta_c = delta / k.
    """
    if components <= 1:
        return epsilon, delta
    return (1.0 + epsilon) ** (1.0 / components) - 1.0, delta / components


def resolve_budget(
    config: EstimatorConfig,
    method: str,
    contractions: int,
    *,
    epsilon: float | None = None,
    delta: float | None = None,
) -> SketchBudget:
    """
    Return the (m, R) a component runs with.

    Args:
        config: Run configuration.
        method: general or acyclic.
        contractions: Number of contractions t of the component.
        epsilon: Component share of epsilon (defaults to the configured one).
        delta: Component share of delta (defaults to the configured one).
    """
    if config.targeted:
        eps = config.epsilon if epsilon is None else epsilon
        dlt = config.delta if delta is None else delta
        assert eps is not None and dlt is not None
        budget = SketchBudget(
            derive_sketch_size(eps, contractions, method, failure=config.chebyshev_failure),
            derive_repetitions(dlt, constant=config.median_constant),
        )
        LOGGER.info("Derived m=%d, R=%d for t=%d (%s)", budget.m, budget.repetitions, contractions, method)
        return budget
    m = next_power_of_two(config.m if config.m is not None else DEFAULT_SKETCH_SIZE)
    if config.m is not None and m != config.m:
        LOGGER.debug("Rounded sketch size %d up to %d", config.m, m)
    return SketchBudget(m, config.repetitions if config.repetitions is not None else DEFAULT_REPETITIONS)


def general_variance_bound(contractions: int, m: int, norm_product_sq: float = 1.0) -> float:
    """Variance bound (3^t / m) prod ||X_k||^2 of the general estimator."""
    return 3.0**contractions / m * norm_product_sq


def acyclic_variance_bound(contractions: int, m: int, norm_product_sq: float = 1.0) -> float:
    """Variance bound ((1 + 8/m)^(2t) - 1) prod ||X_k||^2 of the acyclic estimator."""
    return ((1.0 + 8.0 / m) ** (2 * contractions) - 1.0) * norm_product_sq


def baseline_variance_lower_bound(contractions: int, m: int, norm_product_sq: float = 1.0) -> float:
    """Variance lower bound (3^q / (2 m^2) - 1) prod ||X_k||^2 of the cross-correlation chain on all-ones tensors."""
    return (3.0**contractions / (2.0 * m**2) - 1.0) * norm_product_sq
