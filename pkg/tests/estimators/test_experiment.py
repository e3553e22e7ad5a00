"""Tests for the chain baseline and the variance experiments."""

from __future__ import annotations

import numpy as np
import pytest

from tncsketch.const import METHOD_ACYCLIC, METHOD_BASELINE, METHOD_EXACT, METHOD_GENERAL
from tncsketch.estimators import (
    all_ones_chain,
    baseline_chain_once,
    chain_network,
    check_chain,
    sample_estimates,
    unit_norm_chain,
    variance_experiment,
)
from tncsketch.exceptions import ValidationError
from tncsketch.network import TensorNetwork
from tncsketch.oracle import contract_exact
from tncsketch.tensor import SparseTensor, frobenius_norm


@pytest.mark.unit
def test_check_chain() -> None:
    assert check_chain(all_ones_chain(3, 2)) == (2, 2, 2)

    with pytest.raises(ValidationError) as err:
        check_chain([SparseTensor.zeros((2,))])
    assert err.value.code == "not_a_chain"
    with pytest.raises(ValidationError) as err:
        check_chain([SparseTensor.zeros((2,)), SparseTensor.zeros((2, 2, 2)), SparseTensor.zeros((2,))])
    assert err.value.code == "not_a_chain"
    with pytest.raises(ValidationError) as err:
        check_chain([SparseTensor.zeros((2,)), SparseTensor.zeros((3, 2)), SparseTensor.zeros((2,))])
    assert err.value.code == "dimension_mismatch"


@pytest.mark.unit
def test_chain_network_of_all_ones() -> None:
    net = chain_network(all_ones_chain(4, 2))

    assert net.contractions == ((1, 2), (3, 4), (5, 6), (7, 8))
    # x^T J^3 y with J the 2 x 2 all-ones matrix
    assert contract_exact(net).value() == 16


@pytest.mark.unit
def test_unit_norm_chain() -> None:
    chain = unit_norm_chain(3, 4, 9)

    assert [x.shape for x in chain] == [(4,), (4, 4), (4, 4), (4,)]
    assert all(frobenius_norm(x) == pytest.approx(1.0) for x in chain)
    assert unit_norm_chain(3, 4, 9) == chain


@pytest.mark.unit
def test_baseline_is_exact_on_single_entry_vectors() -> None:
    one = SparseTensor.from_dense([5.0])

    assert baseline_chain_once([one, one], 4, 1) == pytest.approx(25.0)


@pytest.mark.unit
def test_baseline_rejects_bad_sketch_size() -> None:
    with pytest.raises(ValidationError) as err:
        baseline_chain_once(all_ones_chain(2, 2), 6, 1)

    assert err.value.code == "invalid_sketch"


@pytest.mark.unit
def test_sample_estimates_serial_and_parallel_agree() -> None:
    def once(seed: int) -> float:
        return float(seed % 13)

    np.testing.assert_array_equal(sample_estimates(once, 6, 4), sample_estimates(once, 6, 4, parallel=3))


@pytest.mark.unit
def test_exact_method_has_no_variance(chain: TensorNetwork) -> None:
    record = variance_experiment(chain, METHOD_EXACT, 8, 5, 1)

    assert record.variance == 0.0
    assert record.mean == record.exact
    assert record.bound_upper == 0.0
    assert record.ratio is None


@pytest.mark.unit
def test_lower_bound_record() -> None:
    record = variance_experiment(all_ones_chain(4, 2), METHOD_BASELINE, 4, 2, 7, fixture="lowerbound-chain", n=2)

    assert record.bound_lower == pytest.approx(392.0)
    assert record.bound_upper is None
    assert record.norm_product_sq == pytest.approx(256.0)
    assert record.exact == 16
    assert record.as_dict()["q"] == 4


@pytest.mark.unit
def test_experiment_errors(triangle: TensorNetwork, chain: TensorNetwork) -> None:
    with pytest.raises(ValidationError) as err:
        variance_experiment(chain, METHOD_GENERAL, 8, 1, 1)
    assert err.value.code == "invalid_trials"
    with pytest.raises(ValidationError) as err:
        variance_experiment(chain, "nope", 8, 2, 1)
    assert err.value.code == "invalid_method"
    with pytest.raises(ValidationError) as err:
        variance_experiment(triangle, METHOD_ACYCLIC, 8, 2, 1)
    assert err.value.code == "cyclic_network"
    with pytest.raises(ValidationError) as err:
        variance_experiment(chain, METHOD_BASELINE, 8, 2, 1)
    assert err.value.code == "not_a_chain"


@pytest.mark.integration
def test_baseline_variance_exceeds_its_lower_bound() -> None:
    record = variance_experiment(all_ones_chain(4, 2), METHOD_BASELINE, 4, 100000, 31)

    assert abs(record.mean - record.exact) <= 5 * record.std_error
    assert record.bound_lower is not None
    assert record.variance >= 0.8 * record.bound_lower


@pytest.mark.integration
def test_acyclic_meets_its_bound_on_the_lower_bound_chain() -> None:
    record = variance_experiment(chain_network(all_ones_chain(4, 2)), METHOD_ACYCLIC, 4, 2000, 5)

    assert record.bound_upper is not None
    assert record.variance <= record.bound_upper
