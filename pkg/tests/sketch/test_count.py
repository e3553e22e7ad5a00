"""Tests for count sketches and their complements."""

from __future__ import annotations

import numpy as np
import pytest

from tncsketch.exceptions import ValidationError
from tncsketch.fft import dft
from tncsketch.sketch import CountSketchSpec, cs_apply, cs_complement, cs_dense, cs_unit
from tncsketch.tensor import SparseTensor


@pytest.mark.unit
def test_from_tables_matrix() -> None:
    spec = CountSketchSpec.from_tables(4, signs=[1, -1, 1], rows=[2, 2, 4])

    expected = np.array([[0, 0, 0], [1, -1, 0], [0, 0, 0], [0, 0, 1]])

    np.testing.assert_array_equal(cs_dense(spec), expected)
    assert spec.column(2) == (-1, 2)


@pytest.mark.unit
def test_complement_moves_rows() -> None:
    spec = CountSketchSpec.from_tables(4, signs=[1, -1, 1], rows=[1, 2, 4])

    complement = cs_complement(spec)

    # j = 2 - h(i) mod m, 1-based
    assert [complement.column(i)[1] for i in (1, 2, 3)] == [1, 4, 2]
    assert cs_complement(complement) == spec


@pytest.mark.unit
def test_complement_conjugates_the_spectrum(rng: np.random.Generator) -> None:
    spec = CountSketchSpec.sample(16, 10, seed=5)
    x = rng.standard_normal(10)

    np.testing.assert_allclose(dft(cs_apply(cs_complement(spec), x)), np.conj(dft(cs_apply(spec, x))), atol=1e-10)


@pytest.mark.unit
@pytest.mark.parametrize("m", [2, 4, 8, 16, 64])
def test_complement_identity_on_random_vectors(m: int) -> None:
    rng = np.random.default_rng(m)
    worst = 0.0
    for case in range(80):
        n = int(rng.integers(1, 40))
        spec = CountSketchSpec.sample(m, n, seed=1000 * m + case)
        x = rng.standard_normal(n)
        difference = dft(cs_apply(cs_complement(spec), x)) - np.conj(dft(cs_apply(spec, x)))
        worst = max(worst, float(np.abs(difference).max()))

    assert worst <= 1e-9


@pytest.mark.unit
def test_inner_product_of_sketch_and_complement_is_unbiased(rng: np.random.Generator) -> None:
    # mean over i of dft(C x)_i dft(C' y)_i = <C x, C y> for real vectors
    x = rng.integers(-3, 4, size=6).astype(float)
    y = rng.integers(-3, 4, size=6).astype(float)
    estimates = []
    for seed in range(3000):
        spec = CountSketchSpec.sample(8, 6, seed)
        estimates.append((dft(cs_apply(spec, x)) * dft(cs_apply(cs_complement(spec), y))).mean().real)

    standard_error = np.std(estimates) / np.sqrt(len(estimates))
    assert abs(np.mean(estimates) - float(x @ y)) < 4 * standard_error + 1e-9


@pytest.mark.integration
def test_inner_product_moments() -> None:
    rng = np.random.default_rng(77)
    x = rng.standard_normal(16)
    y = x + rng.standard_normal(16)
    trials, m = 100_000, 8

    estimates = np.empty(trials)
    for seed in range(trials):
        spec = CountSketchSpec.sample(m, 16, seed)
        estimates[seed] = cs_apply(spec, x) @ cs_apply(spec, y)
    standard_error = estimates.std(ddof=1) / np.sqrt(trials)

    assert abs(estimates.mean() - float(x @ y)) <= 5 * standard_error
    assert estimates.var(ddof=1) <= 1.2 * (2 / m) * float(x @ x) * float(y @ y)


@pytest.mark.unit
def test_apply_matches_dense(rng: np.random.Generator) -> None:
    spec = CountSketchSpec.sample(8, 12, seed=3)
    x = rng.standard_normal(12)

    np.testing.assert_allclose(cs_apply(spec, x), cs_dense(spec) @ x, atol=1e-12)
    np.testing.assert_allclose(cs_apply(spec, SparseTensor.from_dense(x)), cs_dense(spec) @ x, atol=1e-12)


@pytest.mark.unit
def test_unit_column() -> None:
    spec = CountSketchSpec.sample(8, 5, seed=9)

    np.testing.assert_array_equal(cs_unit(spec, 3), cs_dense(spec)[:, 2])


@pytest.mark.unit
def test_sampling_is_reproducible() -> None:
    assert CountSketchSpec.sample(16, 9, seed=42) == CountSketchSpec.sample(16, 9, seed=42)
    assert CountSketchSpec.sample(16, 9, seed=42) != CountSketchSpec.sample(16, 9, seed=43)


@pytest.mark.unit
def test_vector_longer_than_domain_is_rejected() -> None:
    spec = CountSketchSpec.sample(4, 3, seed=1)

    with pytest.raises(ValidationError):
        cs_apply(spec, np.ones(5))


@pytest.mark.unit
def test_invalid_tables() -> None:
    with pytest.raises(ValidationError):
        CountSketchSpec.from_tables(4, signs=[1, 2], rows=[1, 1])
    with pytest.raises(ValidationError):
        CountSketchSpec.from_tables(4, signs=[1], rows=[5])
