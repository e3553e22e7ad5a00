"""Index arithmetic and structural operations on sparse tensors."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import math

import numpy as np

from tncsketch.exceptions import ValidationError

from .sparse import MultiIndex, SparseTensor


def _check_index(index: Sequence[int], shape: Sequence[int]) -> tuple[int, ...]:
    """Validate a 1-based multi-index against a shape."""
    key = tuple(int(i) for i in index)
    if len(key) != len(shape):
        raise ValidationError(
            f"Index {key} has {len(key)} entries, shape {tuple(shape)} has {len(shape)} modes",
            code="index_order_mismatch",
        )
    for i, n in zip(key, shape, strict=True):
        if not 1 <= i <= n:
            raise ValidationError(
                f"Index {key} out of range for shape {tuple(shape)}",
                code="index_out_of_range",
                details={"index": list(key), "shape": list(shape)},
            )
    return key


def frobenius_norm(x: SparseTensor) -> float:
    """Return the Frobenius norm, the square root of the sum of squared entries."""
    return math.sqrt(math.fsum(v * v for v in x.values.tolist()))


def linear_index(index: Sequence[int], shape: Sequence[int]) -> int:
    """
    Return the 1-based lexicographic position of a multi-index.

    The last mode varies fastest, matching vec() and the Kronecker product
    column order: i = 1 + sum_k (i_k - 1) * n_{k+1} * ... * n_q.
    """
    key = _check_index(index, shape)
    position = 0
    for i, n in zip(key, shape, strict=True):
        position = position * n + (i - 1)
    return position + 1


def multi_index(position: int, shape: Sequence[int]) -> MultiIndex:
    """Inverse of linear_index."""
    total = math.prod(shape)
    if not 1 <= position <= total:
        raise ValidationError(f"Position {position} out of range [1, {total}]", code="index_out_of_range")
    rest = position - 1
    digits: list[int] = []
    for n in reversed(shape):
        rest, digit = divmod(rest, n)
        digits.append(digit + 1)
    return tuple(reversed(digits))


def linear_indices(coords: np.ndarray, shape: Sequence[int]) -> np.ndarray:
    """Vectorized linear_index over the rows of a coordinate array (1-based in and out)."""
    position = np.zeros(coords.shape[0], dtype=np.int64)
    for column, n in enumerate(shape):
        position = position * n + (coords[:, column] - 1)
    return position + 1


def mode_flatten_coords(index: Sequence[int], mode: int, shape: Sequence[int]) -> tuple[int, int]:
    """
    Return the (row, column) of an entry inside the mode-k flattening mat_k(X).

    Args:
        index: 1-based multi-index.
        mode: 1-based mode k.
        shape: Tensor shape.

    Returns:
        (i_k, lexicographic rank of the index with mode k removed), both 1-based.
    """
    if not 1 <= mode <= len(shape):
        raise ValidationError(f"Mode {mode} invalid for an order-{len(shape)} tensor", code="invalid_mode")
    key = _check_index(index, shape)
    rest_index = key[: mode - 1] + key[mode:]
    rest_shape = tuple(shape[: mode - 1]) + tuple(shape[mode:])
    return key[mode - 1], linear_index(rest_index, rest_shape)


def slice_tensor(x: SparseTensor, fixed: Mapping[int, int]) -> SparseTensor:
    """
    Fix some modes of a tensor and return the subtensor over the remaining modes.

    Args:
        x: The tensor.
        fixed: 1-based mode -> 1-based index for every mode to fix.

    Returns:
        Tensor of order q - len(fixed); fixing every mode yields an order-0 tensor.
    """
    for mode, index in fixed.items():
        if not 1 <= mode <= x.order:
            raise ValidationError(f"Mode {mode} invalid for an order-{x.order} tensor", code="invalid_mode")
        if not 1 <= index <= x.shape[mode - 1]:
            raise ValidationError(
                f"Index {index} out of range for mode {mode} of size {x.shape[mode - 1]}",
                code="index_out_of_range",
            )
    if not fixed:
        return x

    mask = np.ones(x.nnz, dtype=bool)
    for mode, index in fixed.items():
        mask &= x.coords[:, mode - 1] == index
    keep = [k for k in range(x.order) if k + 1 not in fixed]
    shape = tuple(x.shape[k] for k in keep)
    return SparseTensor(shape, x.coords[mask][:, keep], x.values[mask])


def _check_permutation(perm: Sequence[int], order: int) -> tuple[int, ...]:
    """Validate a 1-based permutation of [order]."""
    result = tuple(int(p) for p in perm)
    if sorted(result) != list(range(1, order + 1)):
        raise ValidationError(f"{result} is not a permutation of 1..{order}", code="invalid_permutation")
    return result


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    """Return the inverse of a 1-based permutation."""
    perm = _check_permutation(perm, len(perm))
    inverse = [0] * len(perm)
    for position, source in enumerate(perm, start=1):
        inverse[source - 1] = position
    return tuple(inverse)


def permute_modes(x: SparseTensor, perm: Sequence[int]) -> SparseTensor:
    """
    Reorder the modes of a tensor.

    Mode j of the result is mode perm[j] of the input (both 1-based), so
    perm = (2, 1) transposes a matrix.
    """
    perm = _check_permutation(perm, x.order)
    columns = [p - 1 for p in perm]
    shape = tuple(x.shape[c] for c in columns)
    return SparseTensor(shape, x.coords[:, columns], x.values)


def pad_modes(x: SparseTensor, new_shape: Sequence[int]) -> SparseTensor:
    """Enlarge the declared shape; entries are unchanged (zero padding)."""
    target = tuple(int(n) for n in new_shape)
    if len(target) != x.order:
        raise ValidationError(f"Cannot pad an order-{x.order} tensor to shape {target}", code="invalid_shape")
    if any(new < old for new, old in zip(target, x.shape, strict=True)):
        raise ValidationError(f"Padding cannot shrink shape {x.shape} to {target}", code="invalid_shape")
    if target == x.shape:
        return x
    return SparseTensor(target, x.coords, x.values)


def vectorize(x: SparseTensor) -> SparseTensor:
    """Return vec(X) as an order-1 tensor of length prod(shape)."""
    if x.order == 1:
        return x
    positions = linear_indices(x.coords, x.shape).reshape(-1, 1)
    return SparseTensor((x.size,), positions, x.values)
