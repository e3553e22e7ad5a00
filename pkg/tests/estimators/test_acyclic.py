"""Tests for the acyclic estimator."""

from __future__ import annotations

import numpy as np
import pytest

from tncsketch.estimators import (
    estimate_acyclic_once,
    sketched_matvec,
    tree_sketches,
    unit_norm_chain,
    variance_experiment,
)
from tncsketch.exceptions import ValidationError
from tncsketch.network import TensorNetwork, build_rooted_tree
from tncsketch.sketch import CountSketchSpec, RecursiveSketchSpec, cs_dense, rs_dense
from tncsketch.tensor import SparseTensor, to_dense


@pytest.mark.unit
def test_sketched_matvec_matches_dense(rng: np.random.Generator) -> None:
    x = SparseTensor.from_dense(rng.integers(-3, 4, size=(3, 2, 2)))
    c = CountSketchSpec.sample(8, 3, 1)
    r = RecursiveSketchSpec.sample(8, (2, 2), 2)
    z = rng.standard_normal(8)

    expected = cs_dense(c) @ to_dense(x).values.reshape(3, -1) @ rs_dense(r).T @ z

    np.testing.assert_allclose(sketched_matvec(c, x, r, z), expected, atol=1e-9)


@pytest.mark.unit
@pytest.mark.parametrize("seed", range(200))
def test_sketched_matvec_matches_dense_on_random_shapes(seed: int) -> None:
    rng = np.random.default_rng(seed)
    m = 2 ** int(rng.integers(1, 4))
    shape = tuple(int(n) for n in rng.integers(1, 5, size=int(rng.integers(2, 5))))
    dense = rng.integers(-3, 4, size=shape) * (rng.random(shape) < 0.7)
    dense[(0,) * len(shape)] = 5
    x = SparseTensor.from_dense(dense)
    c = CountSketchSpec.sample(m, shape[0], seed)
    r = RecursiveSketchSpec.sample(m, shape[1:], seed + 1)
    z = rng.standard_normal(r.output_dim)

    expected = cs_dense(c) @ to_dense(x).values.reshape(shape[0], -1) @ rs_dense(r).T @ z

    np.testing.assert_allclose(sketched_matvec(c, x, r, z), expected, atol=1e-9)


@pytest.mark.unit
def test_sketched_matvec_of_a_vector_is_a_count_sketch(rng: np.random.Generator) -> None:
    x = SparseTensor.from_dense(rng.integers(-3, 4, size=5))
    c = CountSketchSpec.sample(4, 5, 3)
    identity = RecursiveSketchSpec.sample(4, (), 4)

    np.testing.assert_allclose(sketched_matvec(c, x, identity, np.ones(1)), cs_dense(c) @ to_dense(x).values)


@pytest.mark.unit
def test_sketched_matvec_checks_arity(rng: np.random.Generator) -> None:
    x = SparseTensor.from_dense(rng.integers(-3, 4, size=(3, 2)))
    c = CountSketchSpec.sample(8, 3, 1)

    with pytest.raises(ValidationError) as err:
        sketched_matvec(c, x, RecursiveSketchSpec.sample(8, (2, 2), 2), np.zeros(8))
    assert err.value.code == "arity_mismatch"

    with pytest.raises(ValidationError) as err:
        sketched_matvec(c, x, RecursiveSketchSpec.sample(8, (2,), 2), np.zeros(4))
    assert err.value.code == "dimension_mismatch"


@pytest.mark.unit
def test_tree_sketches_cover_child_modes(tree7: TensorNetwork) -> None:
    tree = build_rooted_tree(tree7)
    sketches = tree_sketches(tree, 16, 3)

    assert sketches[1].order == 3
    assert sketches[2].order == 2
    assert sketches[4].order == 1
    assert all(sketches[k].order == 0 for k in (3, 5, 6, 7))


@pytest.mark.unit
def test_estimate_is_deterministic(tree7: TensorNetwork) -> None:
    tree = build_rooted_tree(tree7)

    assert estimate_acyclic_once(tree7, tree, 16, 5) == estimate_acyclic_once(tree7, tree, 16, 5)


@pytest.mark.unit
def test_tree_must_cover_the_network(tree7: TensorNetwork, chain: TensorNetwork) -> None:
    with pytest.raises(ValidationError) as err:
        estimate_acyclic_once(tree7, build_rooted_tree(chain), 16, 1)

    assert err.value.code == "tree_mismatch"


@pytest.mark.integration
@pytest.mark.parametrize("fixture_name", ["chain", "tree7"])
def test_acyclic_estimator_is_unbiased(fixture_name: str, request: pytest.FixtureRequest) -> None:
    net: TensorNetwork = request.getfixturevalue(fixture_name)

    record = variance_experiment(net, "acyclic", 32, 20000, 23)

    assert abs(record.mean - record.exact) <= 4 * record.std_error
    assert record.bound_upper is not None
    t = len(net.contractions)
    assert record.bound_upper == pytest.approx(((1 + 8 / 32) ** (2 * t) - 1) * record.norm_product_sq)
    assert record.variance <= 1.2 * record.bound_upper


@pytest.mark.integration
@pytest.mark.parametrize(("q", "m"), [(2, 64), (4, 64), (4, 256)])
def test_path_variance_stays_under_the_bound(q: int, m: int) -> None:
    record = variance_experiment(unit_norm_chain(q, 8, q), "acyclic", m, 20000, 29)

    assert record.norm_product_sq == pytest.approx(1.0)
    assert abs(record.mean - record.exact) <= 4 * record.std_error
    assert record.variance <= 1.2 * ((1 + 8 / m) ** (2 * q) - 1)
