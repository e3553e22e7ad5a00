"""Tests for recursive sketches."""

from __future__ import annotations

from functools import reduce

import numpy as np
import pytest

from tncsketch.exceptions import BudgetExceededError, ValidationError
from tncsketch.sketch import (
    RecursiveSketchSpec,
    cs_apply,
    padded_order,
    rs_apply_children,
    rs_apply_tensor,
    rs_dense,
    rs_hash,
)
from tncsketch.tensor import SparseTensor, linear_index, to_dense

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(("c", "q"), [(0, 0), (1, 2), (2, 2), (3, 4), (4, 4), (5, 8)])
def test_padded_order(c: int, q: int) -> None:
    assert padded_order(c) == q


def test_structure() -> None:
    spec = RecursiveSketchSpec.sample(8, (2, 3, 2), seed=1)

    assert spec.order == 3
    assert spec.padded_order == 4
    assert [len(level) for level in spec.levels] == [2, 1]
    assert spec.leaves[3].n == 1


def test_hash_form_matches_dense_definition() -> None:
    spec = RecursiveSketchSpec.sample(4, (2, 3, 2), seed=21)
    dense = rs_dense(spec)

    assert dense.shape == (4, 12)
    for index in [(1, 1, 1), (2, 2, 1), (1, 3, 2), (2, 3, 2)]:
        sign, row = rs_hash(spec, index)
        column = np.zeros(4)
        column[row - 1] = sign
        np.testing.assert_allclose(dense[:, linear_index(index, (2, 3, 2)) - 1], column, atol=1e-10)


def test_apply_tensor_matches_dense(rng: np.random.Generator) -> None:
    spec = RecursiveSketchSpec.sample(4, (3, 2), seed=6)
    x = SparseTensor.from_dense(rng.integers(-3, 4, size=(3, 2)))

    np.testing.assert_allclose(rs_apply_tensor(spec, x), rs_dense(spec) @ to_dense(x).values.reshape(-1), atol=1e-10)


def test_children_reduction_matches_dense(rng: np.random.Generator) -> None:
    spec = RecursiveSketchSpec.sample(4, (2, 3, 2), seed=13)
    children = [rng.standard_normal(n) for n in (2, 3, 2)]

    sketched = [cs_apply(leaf, g) for leaf, g in zip(spec.leaves, children, strict=False)]

    np.testing.assert_allclose(
        rs_apply_children(spec, sketched), rs_dense(spec) @ reduce(np.kron, children), atol=1e-10
    )


def test_order_zero_is_identity() -> None:
    spec = RecursiveSketchSpec.sample(8, (), seed=3)

    assert spec.output_dim == 1
    np.testing.assert_array_equal(rs_apply_children(spec, []), [1.0])
    np.testing.assert_array_equal(rs_apply_tensor(spec, SparseTensor.scalar(2.5)), [2.5])
    np.testing.assert_array_equal(rs_dense(spec), [[1.0]])


def test_inner_products_are_preserved_in_expectation(rng: np.random.Generator) -> None:
    x = SparseTensor.from_dense(rng.integers(-2, 3, size=(2, 2)))
    y = SparseTensor.from_dense(rng.integers(-2, 3, size=(2, 2)))
    exact = float(np.sum(to_dense(x).values * to_dense(y).values))

    estimates = [
        float(rs_apply_tensor(spec, x) @ rs_apply_tensor(spec, y))
        for spec in (RecursiveSketchSpec.sample(8, (2, 2), seed) for seed in range(2000))
    ]

    standard_error = np.std(estimates) / np.sqrt(len(estimates))
    assert abs(np.mean(estimates) - exact) < 4 * standard_error + 1e-9


def test_wrong_child_count() -> None:
    spec = RecursiveSketchSpec.sample(8, (2, 2), seed=3)

    with pytest.raises(ValidationError):
        rs_apply_children(spec, [np.zeros(8)])


def test_dense_guard() -> None:
    spec = RecursiveSketchSpec.sample(64, (2, 2, 2), seed=3)

    with pytest.raises(BudgetExceededError):
        rs_dense(spec)
