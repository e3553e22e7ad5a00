"""Tests for the network model and its validation."""

from __future__ import annotations

import pytest

from tncsketch.exceptions import NetworkValidationError, ValidationError
from tncsketch.network import TensorNetwork, ensure_normalized, ensure_valid, fix_free_modes, validate
from tncsketch.oracle import contract_exact
from tncsketch.tensor import SparseTensor

pytestmark = pytest.mark.unit


def test_global_mode_numbering(example1: TensorNetwork) -> None:
    assert example1.num_modes == 8
    assert example1.mode_owner(5) == (2, 2)
    assert example1.global_mode(4, 1) == 7
    assert list(example1.modes_of(3)) == [6]
    assert example1.free_modes == (2, 8)
    assert example1.output_shape == (2, 2)
    assert not example1.is_full


def test_contractions_are_canonical() -> None:
    net = TensorNetwork.of((SparseTensor.zeros((2,)), SparseTensor.zeros((2,))), [(2, 1), (1, 2)])

    assert net.contractions == ((1, 2),)
    assert net.is_full


def test_valid_network_has_no_diagnostics(example1: TensorNetwork) -> None:
    assert validate(example1) == []
    assert ensure_valid(example1) is example1


@pytest.mark.parametrize(
    ("contractions", "code"),
    [
        ([(1, 9)], "mode_out_of_range"),
        ([(2, 2)], "self_pair"),
        ([(1, 3)], "dimension_mismatch"),
    ],
)
def test_invalid_contractions(contractions: list[tuple[int, int]], code: str) -> None:
    net = TensorNetwork.of((SparseTensor.zeros((2, 3)), SparseTensor.zeros((3,))), contractions)

    diagnostics = validate(net)

    assert [d.code for d in diagnostics] == [code]
    with pytest.raises(NetworkValidationError) as err:
        ensure_valid(net)
    assert err.value.details["diagnostics"][0]["code"] == code


def test_empty_network_is_invalid() -> None:
    assert [d.code for d in validate(TensorNetwork(()))] == ["no_tensors"]


def test_example1_is_not_normalized(example1: TensorNetwork) -> None:
    with pytest.raises(NetworkValidationError) as err:
        ensure_normalized(example1)

    assert "parallel_contraction" in {d.code for d in err.value.diagnostics}


def test_fix_free_modes_matches_output_entries(example1: TensorNetwork) -> None:
    exact = contract_exact(example1)

    for i2, i8 in [(1, 1), (2, 1), (2, 2)]:
        sliced = fix_free_modes(example1, {2: i2, 8: i8})
        assert sliced.is_full
        assert contract_exact(sliced).value() == exact.get((i2, i8))


def test_fix_free_modes_rejects_contracted_modes(example1: TensorNetwork) -> None:
    with pytest.raises(ValidationError):
        fix_free_modes(example1, {1: 1})
