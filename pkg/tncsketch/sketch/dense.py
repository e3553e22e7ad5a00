"""
Dense sketch matrices for small-size oracles.

Each function materializes a sketch directly from its definition rather
than from the per-column hash form, so the two can be compared:

- cs_dense: C(j, i) = s(i) [h(i) = j]
- ts_dense: T = idft((dft C_1) . ... . (dft C_q)) with row-wise Kronecker products
- rs_dense: R = Q_2 Q_4 ... Q_q (C_1 kron ... kron C_q)
"""

from __future__ import annotations

from functools import reduce
import math

import numpy as np

from tncsketch.const import DENSE_MAX_COLUMNS
from tncsketch.exceptions import BudgetExceededError, ValidationError

from .count import CountSketchSpec
from .recursive import RecursiveSketchSpec
from .tensor import TensorSketchSpec


def _guard(columns: int, limit: int) -> None:
    if columns > limit:
        raise BudgetExceededError(
            f"Dense sketch with {columns} columns exceeds the limit of {limit}",
            code="dense_size_exceeded",
            details={"columns": columns, "limit": limit},
        )


def row_wise_kronecker(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row j of the result is kron(a[j], b[j]); a and b need equal row counts."""
    if a.shape[0] != b.shape[0]:
        raise ValidationError(f"Row counts differ: {a.shape[0]} vs {b.shape[0]}", code="dimension_mismatch")
    return (a[:, :, None] * b[:, None, :]).reshape(a.shape[0], a.shape[1] * b.shape[1])


def cs_dense(spec: CountSketchSpec, *, limit: int = DENSE_MAX_COLUMNS) -> np.ndarray:
    """Return the m x n count sketch matrix."""
    _guard(spec.n, limit)
    columns = np.arange(1, spec.n + 1)
    matrix = np.zeros((spec.m, spec.n))
    matrix[spec.rows(columns), columns - 1] = spec.signs(columns)
    return matrix


def ts_dense(spec: TensorSketchSpec, *, limit: int = DENSE_MAX_COLUMNS) -> np.ndarray:
    """Return the m x prod(n) tensor sketch matrix via the Fourier-domain construction."""
    _guard(math.prod(spec.shape), limit)
    spectra = [np.fft.fft(cs_dense(c, limit=limit), axis=0) for c in spec.components]
    return np.fft.ifft(reduce(row_wise_kronecker, spectra), axis=0).real


def rs_dense(spec: RecursiveSketchSpec, *, limit: int = DENSE_MAX_COLUMNS) -> np.ndarray:
    """Return the recursive sketch matrix over the logical modes."""
    if spec.order == 0:
        return np.ones((1, 1))
    _guard(math.prod(spec.leaf_sizes), limit)
    _guard(spec.m**spec.padded_order, limit)

    matrix = reduce(np.kron, [cs_dense(leaf, limit=limit) for leaf in spec.leaves])
    for level in spec.levels:
        q_level = reduce(np.kron, [ts_dense(node, limit=limit) for node in level])
        matrix = q_level @ matrix
    return matrix
