"""Tests for sketch size derivation and the variance bounds."""

from __future__ import annotations

import pytest

from tncsketch.const import METHOD_ACYCLIC, METHOD_EXACT, METHOD_GENERAL
from tncsketch.data import EstimatorConfig
from tncsketch.estimators import (
    SketchBudget,
    acyclic_variance_bound,
    baseline_variance_lower_bound,
    derive_repetitions,
    derive_sketch_size,
    general_variance_bound,
    resolve_budget,
    split_budget,
)
from tncsketch.exceptions import ConfigError

pytestmark = pytest.mark.unit


def test_general_sketch_size() -> None:
    # 3^2 / (0.25 * 0.25) = 144
    assert derive_sketch_size(0.5, 2, METHOD_GENERAL) == 256
    assert derive_sketch_size(1.0, 1, METHOD_GENERAL) == 16


def test_acyclic_sketch_size() -> None:
    # 32 * 2 / (0.25 * 0.25) = 1024
    assert derive_sketch_size(0.5, 2, METHOD_ACYCLIC) == 1024
    # the 16 t floor wins for large epsilon
    assert derive_sketch_size(100.0, 3, METHOD_ACYCLIC) == 64


def test_sketch_size_errors() -> None:
    with pytest.raises(ConfigError):
        derive_sketch_size(0.0, 2, METHOD_GENERAL)
    with pytest.raises(ConfigError) as err:
        derive_sketch_size(0.5, 2, METHOD_EXACT)
    assert err.value.code == "invalid_method"


@pytest.mark.parametrize(("delta", "expected"), [(0.1, 19), (0.01, 37), (0.9, 1)])
def test_repetitions(delta: float, expected: int) -> None:
    assert derive_repetitions(delta) == expected


@pytest.mark.parametrize("delta", [0.0, 1.0, -0.5])
def test_repetitions_reject_bad_delta(delta: float) -> None:
    with pytest.raises(ConfigError):
        derive_repetitions(delta)


def test_split_budget() -> None:
    assert split_budget(0.3, 0.1, 1) == (0.3, 0.1)
    eps, delta = split_budget(0.21, 0.1, 2)

    assert eps == pytest.approx(0.1)
    assert delta == pytest.approx(0.05)
    assert (1 + eps) ** 2 - 1 == pytest.approx(0.21)


def test_resolve_budget_rounds_m_up() -> None:
    assert resolve_budget(EstimatorConfig(m=100), METHOD_GENERAL, 3) == SketchBudget(128, 1)
    assert resolve_budget(EstimatorConfig(m=64, repetitions=5), METHOD_ACYCLIC, 3) == SketchBudget(64, 5)
    assert resolve_budget(EstimatorConfig(), METHOD_GENERAL, 3) == SketchBudget(64, 1)


def test_resolve_budget_from_targets() -> None:
    config = EstimatorConfig(epsilon=0.5, delta=0.1)

    assert resolve_budget(config, METHOD_GENERAL, 2) == SketchBudget(256, 19)
    assert resolve_budget(config, METHOD_GENERAL, 2, epsilon=1.0, delta=0.9) == SketchBudget(64, 1)


@pytest.mark.parametrize(
    ("kwargs", "code"),
    [
        ({"method": "nope"}, "invalid_method"),
        ({"m": 0}, "invalid_m"),
        ({"repetitions": 0}, "invalid_reps"),
        ({"m": 64, "epsilon": 0.1, "delta": 0.1}, "invalid_budget"),
        ({"epsilon": 0.1}, "invalid_budget"),
        ({"epsilon": -0.1, "delta": 0.1}, "invalid_epsilon"),
        ({"epsilon": 0.1, "delta": 1.5}, "invalid_delta"),
        ({"seed": -1}, "invalid_seed"),
        ({"parallel": 0}, "invalid_config"),
    ],
)
def test_estimator_config_rejects(kwargs: dict, code: str) -> None:
    with pytest.raises(ConfigError) as err:
        EstimatorConfig(**kwargs)

    assert err.value.code == code


def test_variance_bounds() -> None:
    assert general_variance_bound(2, 9) == pytest.approx(1.0)
    assert acyclic_variance_bound(1, 8, 2.0) == pytest.approx(6.0)
    # all-ones chain, q = 4, n = 2, m = 4: norms squared 2 * 4^3 * 2
    assert baseline_variance_lower_bound(4, 4, 256.0) == pytest.approx(392.0)
