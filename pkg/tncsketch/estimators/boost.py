"""Median boosting of single-shot estimators."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

from tncsketch.const import DEFAULT_PARALLEL, LOGGER, SEED_TAG_REPETITION
from tncsketch.exceptions import ValidationError
from tncsketch.hashing import derive_seed

type Estimator = Callable[[int], float]


class BoostResult(NamedTuple):
    """Median of R repetitions with the values and seeds behind it."""

    value: float
    values: tuple[float, ...]
    seeds: tuple[int, ...]


def lower_median(values: Sequence[float]) -> float:
    """Return the median; the lower of the two middle values for even counts."""
    if not values:
        raise ValidationError("Median of an empty sequence", code="empty_sample")
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def repetition_seeds(seed: int, repetitions: int) -> tuple[int, ...]:
    """Seeds of repetitions 0..R-1 under a master seed."""
    return tuple(derive_seed(seed, SEED_TAG_REPETITION, r) for r in range(repetitions))


def run_repetitions(once: Estimator, repetitions: int, seed: int, *, parallel: int = DEFAULT_PARALLEL) -> BoostResult:
    """
    Run R independent repetitions and take their median.

    Args:
        once: Single-shot estimator taking a seed.
        repetitions: R >= 1.
        seed: Master seed; repetition r runs with derive_seed(seed, "repetition", r).
        parallel: Worker threads; values stay ordered by repetition index.
    """
    if repetitions < 1:
        raise ValidationError(f"Repetitions must be positive, got {repetitions}", code="invalid_reps")
    seeds = repetition_seeds(seed, repetitions)
    if parallel > 1 and repetitions > 1:
        with ThreadPoolExecutor(max_workers=min(parallel, repetitions)) as pool:
            values = tuple(float(v) for v in pool.map(once, seeds))
    else:
        values = tuple(float(once(s)) for s in seeds)
    value = lower_median(values)
    LOGGER.debug("Median of %d repetitions: %.6g", repetitions, value)
    return BoostResult(value, values, seeds)


def median_boost(once: Estimator, repetitions: int, seed: int, *, parallel: int = DEFAULT_PARALLEL) -> float:
    """Return the median of R independent single-shot estimates."""
    return run_repetitions(once, repetitions, seed, parallel=parallel).value
