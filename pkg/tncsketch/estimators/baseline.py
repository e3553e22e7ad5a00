"""
Cross-correlation chain estimator for matrix chains.

For x_1^T X_2 ... X_q x_(q+1) with count sketches C_1..C_q, one per
contraction, the estimate is the first component of

    C_1 x_1 star T_2 vec(X_2) star ... star T_q vec(X_q) star C_q x_(q+1)

with T_i the tensor sketch of (C_(i-1), C_i). Only the variance experiments
use it, as the comparison target of the acyclic estimator.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from tncsketch.const import SEED_TAG_CHAIN
from tncsketch.exceptions import ValidationError
from tncsketch.fft import circ_xcorr, is_power_of_two
from tncsketch.hashing import derive_seed
from tncsketch.network import TensorNetwork
from tncsketch.sketch import CountSketchSpec, TensorSketchSpec, cs_apply, ts_apply_tensor
from tncsketch.tensor import SparseTensor


def check_chain(tensors: Sequence[SparseTensor]) -> tuple[int, ...]:
    """
    Validate a chain and return its contraction sizes.

    A chain is a vector, zero or more matrices and a vector, with every
    adjacent pair agreeing on the shared dimension.
    """
    if len(tensors) < 2:
        raise ValidationError("A chain needs at least two tensors", code="not_a_chain")
    orders = [x.order for x in tensors]
    if orders[0] != 1 or orders[-1] != 1 or any(order != 2 for order in orders[1:-1]):
        raise ValidationError(f"Chain tensors must have orders 1, 2, ..., 2, 1, got {orders}", code="not_a_chain")
    sizes = []
    for left, right in zip(tensors[:-1], tensors[1:], strict=True):
        if left.shape[-1] != right.shape[0]:
            raise ValidationError(
                f"Chain dimensions {left.shape} and {right.shape} do not match", code="dimension_mismatch"
            )
        sizes.append(left.shape[-1])
    return tuple(sizes)


def chain_network(tensors: Sequence[SparseTensor]) -> TensorNetwork:
    """Return the chain as a network with contractions (1, 2), (3, 4), ..."""
    q = len(check_chain(tensors))
    return TensorNetwork.of(tensors, ((2 * e - 1, 2 * e) for e in range(1, q + 1)))


def all_ones_chain(q: int, n: int) -> tuple[SparseTensor, ...]:
    """Two all-ones vectors around q - 1 all-ones n x n matrices (q contractions)."""
    if q < 1 or n < 1:
        raise ValidationError(f"Invalid chain q={q}, n={n}", code="not_a_chain")
    vector = SparseTensor.from_dense(np.ones(n))
    matrix = SparseTensor.from_dense(np.ones((n, n)))
    return (vector, *(matrix,) * (q - 1), vector)


def baseline_chain_once(tensors: Sequence[SparseTensor], m: int, seed: int) -> float:
    """
    Single-shot cross-correlation chain estimate.

    Args:
        tensors: Chain x_1, X_2, ..., X_q, x_(q+1).
        m: Power-of-two sketch size.
        seed: Seed of the q count sketches.
    """
    sizes = check_chain(tensors)
    if not is_power_of_two(m):
        raise ValidationError(f"Sketch size {m} is not a power of two", code="invalid_sketch")
    sketches = [CountSketchSpec.sample(m, n, derive_seed(seed, SEED_TAG_CHAIN, e)) for e, n in enumerate(sizes)]

    acc = cs_apply(sketches[0], tensors[0])
    for e, matrix in enumerate(tensors[1:-1], start=1):
        acc = circ_xcorr(acc, ts_apply_tensor(TensorSketchSpec((sketches[e - 1], sketches[e])), matrix))
    acc = circ_xcorr(acc, cs_apply(sketches[-1], tensors[-1]))
    return float(acc[0])
