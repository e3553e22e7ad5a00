"""Monte-Carlo checks of the boosted (epsilon, delta) guarantee and of partial contraction."""

from __future__ import annotations

from dataclasses import replace
import math

import numpy as np
import pytest

from tncsketch.const import METHOD_GENERAL
from tncsketch.data import EstimatorConfig
from tncsketch.estimators import derive_repetitions, derive_sketch_size, estimate, estimate_full, estimate_partial
from tncsketch.network import TensorNetwork, normalize_wlog
from tncsketch.oracle import contract_exact
from tncsketch.tensor import SparseTensor, to_dense

pytestmark = pytest.mark.integration


def _cells(x: SparseTensor) -> np.ndarray:
    return to_dense(x).values.reshape(x.shape)


def test_boosted_estimates_meet_epsilon_delta(triangle: TensorNetwork) -> None:
    config = EstimatorConfig(method=METHOD_GENERAL, epsilon=0.2, delta=0.05)
    exact = contract_exact(triangle).value()
    tolerance = 0.2 * triangle.norm_product()

    failures = 0
    for seed in range(500):
        report = estimate(triangle, replace(config, seed=seed))
        assert report.m == derive_sketch_size(0.2, 3, METHOD_GENERAL)
        assert report.repetitions == derive_repetitions(0.05)
        failures += abs(float(report.value) - exact) > tolerance  # type: ignore[arg-type]

    assert failures / 500 <= 0.07


def test_partial_cell_means_match_the_oracle(example1: TensorNetwork) -> None:
    normalized = normalize_wlog(example1).network
    exact = _cells(contract_exact(example1))
    trials = 2000

    samples = np.stack(
        [
            _cells(
                estimate_partial(
                    normalized, EstimatorConfig(method=METHOD_GENERAL, m=16, repetitions=1, seed=seed), estimate_full
                ).value
            )
            for seed in range(trials)
        ]
    )
    mean = samples.mean(axis=0)
    std_error = samples.std(axis=0, ddof=1) / math.sqrt(trials)

    assert mean.shape == exact.shape == (2, 2)
    assert np.all(np.abs(mean - exact) <= 4 * std_error + 1e-9 * (1 + np.abs(exact)))
