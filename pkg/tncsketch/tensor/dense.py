"""Small dense tensors used by oracles and tests."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
import math
from typing import Any

import numpy as np

from tncsketch.exceptions import BudgetExceededError, ValidationError

from .sparse import SparseTensor


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Row-major dense tensor."""

    shape: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        """Check the value count against the shape."""
        shape = tuple(int(n) for n in self.shape)
        values = np.asarray(self.values)
        if values.size != math.prod(shape):
            raise ValidationError(
                f"Dense tensor of shape {shape} needs {math.prod(shape)} values, got {values.size}",
                code="invalid_shape",
            )
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "values", values.reshape(shape))

    @property
    def order(self) -> int:
        """Number of modes."""
        return len(self.shape)

    def get(self, index: Sequence[int]) -> Any:
        """Return the entry at a 1-based multi-index."""
        return self.values[tuple(int(i) - 1 for i in index)]


def to_dense(x: SparseTensor, *, max_cells: int | None = None, dtype: Any = np.float64) -> DenseTensor:
    """
    Materialize a sparse tensor.

    Raises:
        BudgetExceededError: The dense form has more than max_cells cells.
    """
    if max_cells is not None and x.size > max_cells:
        raise BudgetExceededError(
            f"Dense form of shape {x.shape} has {x.size} cells, limit is {max_cells}",
            details={"cells": x.size, "limit": max_cells},
        )
    values = np.zeros(x.shape, dtype=dtype)
    if x.nnz:
        data = np.rint(x.values).astype(dtype) if np.issubdtype(dtype, np.integer) else x.values.astype(dtype)
        if x.order == 0:
            values[()] = data[0]
        else:
            values[tuple((x.coords - 1).T)] = data
    return DenseTensor(x.shape, values)


def from_dense(dense: DenseTensor | np.ndarray) -> SparseTensor:
    """Convert a dense tensor back to coordinate form."""
    array = dense.values if isinstance(dense, DenseTensor) else dense
    return SparseTensor.from_dense(array)


def is_integer_valued(x: SparseTensor) -> bool:
    """Return True when every stored value is an exact integer."""
    return bool(np.all(np.mod(x.values, 1.0) == 0.0))
