"""Tests for SparseTensor and SparseTensorBuilder."""

from __future__ import annotations

import numpy as np
import pytest

from tncsketch.exceptions import ValidationError
from tncsketch.tensor import SparseTensor, SparseTensorBuilder

pytestmark = pytest.mark.unit


def test_canonical_form_sums_duplicates_and_drops_zeros() -> None:
    x = SparseTensor.from_entries((2, 3), [((2, 1), 1.0), ((1, 3), 2.0), ((2, 1), 4.0), ((1, 1), 0.0)])

    assert x.nnz == 2
    assert x.coords.tolist() == [[1, 3], [2, 1]]
    assert x.values.tolist() == [2.0, 5.0]


def test_cancelling_entries_vanish() -> None:
    x = SparseTensor.from_entries((2,), [((1,), 3.0), ((1,), -3.0)])

    assert x.nnz == 0
    assert x.get((1,)) == 0.0


def test_arrays_are_read_only() -> None:
    x = SparseTensor.from_dense([[1, 0], [0, 2]])

    with pytest.raises(ValueError):
        x.values[0] = 7.0


def test_index_out_of_range_is_rejected() -> None:
    with pytest.raises(ValidationError) as err:
        SparseTensor.from_entries((2, 2), [((3, 1), 1.0)])

    assert err.value.code == "index_out_of_range"


def test_order_mismatch_is_rejected() -> None:
    with pytest.raises(ValidationError) as err:
        SparseTensor.from_entries((2, 2), [((1,), 1.0)])

    assert err.value.code == "index_order_mismatch"


@pytest.mark.parametrize("shape", [(0,), (2, -1)])
def test_non_positive_mode_sizes_are_rejected(shape: tuple[int, ...]) -> None:
    with pytest.raises(ValidationError):
        SparseTensor.zeros(shape)


def test_scalar_tensor() -> None:
    x = SparseTensor.scalar(3.5)

    assert x.order == 0
    assert x.size == 1
    assert x.value() == 3.5
    assert SparseTensor.scalar(0.0).value() == 0.0


def test_value_needs_order_zero() -> None:
    with pytest.raises(ValidationError):
        SparseTensor.from_dense([1.0, 2.0]).value()


def test_from_dense_uses_one_based_indices() -> None:
    x = SparseTensor.from_dense(np.array([[0.0, 1.5], [2.0, 0.0]]))

    assert x.entries == {(1, 2): 1.5, (2, 1): 2.0}
    assert x.get((2, 2)) == 0.0


def test_equality_is_structural() -> None:
    a = SparseTensor.from_entries((2, 2), {(1, 1): 1.0, (2, 2): 2.0})
    b = SparseTensor.from_entries((2, 2), [((2, 2), 2.0), ((1, 1), 1.0)])

    assert a == b
    assert a != SparseTensor.from_entries((2, 3), {(1, 1): 1.0, (2, 2): 2.0})
    assert a.scaled(2.0).values.tolist() == [2.0, 4.0]


def test_builder_accumulates_turnstile_updates() -> None:
    builder = SparseTensorBuilder((2, 2))
    builder.add((1, 2), 3.0)
    builder.add((1, 2), -1.0)
    builder.add((2, 1), 5.0)
    builder.add((2, 1), -5.0)

    assert builder.build().entries == {(1, 2): 2.0}


def test_builder_rejects_out_of_range() -> None:
    builder = SparseTensorBuilder((2,))

    with pytest.raises(ValidationError):
        builder.add((3,), 1.0)
