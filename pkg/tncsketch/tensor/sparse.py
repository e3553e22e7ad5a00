"""
Coordinate-format sparse tensors.

A SparseTensor stores its nonzero entries as a coordinate array of 1-based
multi-indices plus a value array, always in canonical form:

- rows sorted lexicographically (the vectorization order)
- no duplicate multi-indices (duplicates are summed on construction)
- no explicit zeros

Instances are immutable; the arrays are flagged read-only. Incremental
construction goes through SparseTensorBuilder.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
import math
from typing import Any

import numpy as np

from tncsketch.exceptions import ValidationError

type MultiIndex = tuple[int, ...]


def _check_shape(shape: Iterable[int]) -> tuple[int, ...]:
    """Return shape as a tuple of positive ints or raise."""
    result = tuple(int(n) for n in shape)
    for n in result:
        if n < 1:
            raise ValidationError(f"Mode sizes must be positive, got shape {result}", code="invalid_shape")
    return result


def _canonicalize(shape: tuple[int, ...], coords: Any, values: Any) -> tuple[np.ndarray, np.ndarray]:
    """Sort, deduplicate (summing) and drop zeros."""
    order = len(shape)
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    coords = np.asarray(coords, dtype=np.int64).reshape(values.shape[0], order)

    if values.shape[0] == 0:
        return np.empty((0, order), dtype=np.int64), np.empty(0, dtype=np.float64)

    if order == 0:
        total = math.fsum(values.tolist())
        if total == 0.0:
            return np.empty((0, 0), dtype=np.int64), np.empty(0, dtype=np.float64)
        return np.empty((1, 0), dtype=np.int64), np.array([total], dtype=np.float64)

    upper = np.asarray(shape, dtype=np.int64)
    bad = (coords < 1) | (coords > upper)
    if bad.any():
        row = int(np.argmax(bad.any(axis=1)))
        raise ValidationError(
            f"Index {tuple(int(c) for c in coords[row])} out of range for shape {shape}",
            code="index_out_of_range",
            details={"index": [int(c) for c in coords[row]], "shape": list(shape)},
        )

    unique, inverse = np.unique(coords, axis=0, return_inverse=True)
    summed = np.zeros(unique.shape[0], dtype=np.float64)
    np.add.at(summed, inverse.reshape(-1), values)

    keep = summed != 0.0
    return np.ascontiguousarray(unique[keep]), summed[keep]


@dataclass(frozen=True, eq=False)
class SparseTensor:
    """
    An order-q tensor in coordinate format.

    Attributes:
        shape: Mode sizes n_1..n_q (empty for order-0 tensors).
        coords: (nnz, q) array of 1-based multi-indices in lexicographic order.
        values: (nnz,) array of nonzero values.
    """

    shape: tuple[int, ...]
    coords: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        """Bring the arrays into canonical form and freeze them."""
        shape = _check_shape(self.shape)
        coords, values = _canonicalize(shape, self.coords, self.values)
        coords.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_entries(
        cls,
        shape: Sequence[int],
        entries: Mapping[Sequence[int], float] | Iterable[tuple[Sequence[int], float]],
    ) -> SparseTensor:
        """
        Build a tensor from (multi-index, value) pairs.

        Args:
            shape: Mode sizes.
            entries: Mapping or iterable of 1-based multi-indices and values.
                Repeated multi-indices are summed.

        Returns:
            The canonical tensor.
        """
        items = entries.items() if isinstance(entries, Mapping) else entries
        index_list: list[Sequence[int]] = []
        value_list: list[float] = []
        order = len(shape)
        for index, value in items:
            if len(index) != order:
                raise ValidationError(
                    f"Index {tuple(index)} has {len(index)} entries, tensor has order {order}",
                    code="index_order_mismatch",
                )
            index_list.append(index)
            value_list.append(value)
        coords = np.asarray(index_list, dtype=np.int64).reshape(len(index_list), order)
        return cls(tuple(shape), coords, value_list)

    @classmethod
    def from_dense(cls, array: Any) -> SparseTensor:
        """Build a tensor from a dense array (row-major)."""
        dense = np.asarray(array, dtype=np.float64)
        if dense.ndim == 0:
            return cls.scalar(float(dense))
        nonzero = np.nonzero(dense)
        coords = np.stack(nonzero, axis=1) + 1
        return cls(dense.shape, coords, dense[nonzero])

    @classmethod
    def scalar(cls, value: float) -> SparseTensor:
        """Build an order-0 tensor holding a single value."""
        return cls((), np.empty((1, 0), dtype=np.int64), [value])

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> SparseTensor:
        """Build an all-zero tensor."""
        return cls(tuple(shape), np.empty((0, len(shape)), dtype=np.int64), [])

    @property
    def order(self) -> int:
        """Number of modes."""
        return len(self.shape)

    @property
    def nnz(self) -> int:
        """Number of stored (nonzero) entries."""
        return int(self.values.shape[0])

    @property
    def size(self) -> int:
        """Number of cells of the dense equivalent."""
        return math.prod(self.shape)

    @cached_property
    def entries(self) -> dict[MultiIndex, float]:
        """Nonzero entries keyed by multi-index."""
        return {
            tuple(int(c) for c in row): float(v) for row, v in zip(self.coords, self.values, strict=True)
        }

    def get(self, index: Sequence[int]) -> float:
        """Return the entry at a multi-index (zero when not stored)."""
        key = tuple(int(i) for i in index)
        if len(key) != self.order:
            raise ValidationError(f"Index {key} does not address an order-{self.order} tensor")
        for i, n in zip(key, self.shape, strict=True):
            if not 1 <= i <= n:
                raise ValidationError(f"Index {key} out of range for shape {self.shape}", code="index_out_of_range")
        return self.entries.get(key, 0.0)

    def value(self) -> float:
        """Return the scalar held by an order-0 tensor."""
        if self.order:
            raise ValidationError(f"value() requires an order-0 tensor, got order {self.order}")
        return float(self.values[0]) if self.nnz else 0.0

    def scaled(self, factor: float) -> SparseTensor:
        """Return the tensor multiplied by a scalar."""
        return SparseTensor(self.shape, self.coords, self.values * factor)

    def __eq__(self, other: object) -> bool:
        """Structural equality: same shape and same canonical entries."""
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.coords, other.coords)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        """Short representation."""
        return f"SparseTensor(shape={self.shape}, nnz={self.nnz})"


class SparseTensorBuilder:
    """
    Mutable accumulator producing a SparseTensor.

    Used for turnstile style construction: repeated add() calls on the same
    index accumulate, and entries that cancel to zero are dropped on build().
    """

    def __init__(self, shape: Sequence[int]) -> None:
        """Initialize an empty builder for the given shape."""
        self.shape = _check_shape(shape)
        self._entries: dict[MultiIndex, float] = {}

    def add(self, index: Sequence[int], delta: float) -> None:
        """Add delta to the entry at index."""
        key = tuple(int(i) for i in index)
        if len(key) != len(self.shape):
            raise ValidationError(f"Index {key} does not match shape {self.shape}", code="index_order_mismatch")
        for i, n in zip(key, self.shape, strict=True):
            if not 1 <= i <= n:
                raise ValidationError(f"Index {key} out of range for shape {self.shape}", code="index_out_of_range")
        self._entries[key] = self._entries.get(key, 0.0) + float(delta)

    def build(self) -> SparseTensor:
        """Return the accumulated tensor."""
        return SparseTensor.from_entries(self.shape, self._entries)
