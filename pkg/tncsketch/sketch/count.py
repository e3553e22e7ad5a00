"""
Count sketch and complement count sketch.

A count sketch C in R^(m x n) has one nonzero per column: C(h(i), i) = s(i),
with a 4-wise independent sign hash s and a 2-wise independent row hash h.
Its complement C' moves column i to row j with j = 2 - h(i) (mod m), which
circularly reverses every column so that dft(C' x) = conj(dft(C x)) for
real x.

Rows are handled 0-based internally (h0 = h - 1); the complement row is
then simply (-h0) mod m.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from tncsketch.const import SEED_TAG_ROW, SEED_TAG_SIGN
from tncsketch.exceptions import ValidationError
from tncsketch.hashing import KWiseHash, SignHash, derive_seed, row_hash_new, sign_new
from tncsketch.tensor import SparseTensor


@dataclass(frozen=True, eq=False)
class CountSketchSpec:
    """
    Seeded description of a count sketch matrix.

    Either the hash pair (sampled sketches) or the explicit tables
    (test fixtures) define the matrix; evaluation only ever touches the
    columns it is asked for.

    Attributes:
        m: Sketch size (rows).
        n: Domain size (columns).
        seed: Seed the hashes were drawn from.
        sign_hash: 4-wise independent sign hash.
        row_hash: 2-wise independent row hash into [m].
        sign_table: Explicit signs of columns 1..n, overrides sign_hash.
        row_table: Explicit 1-based rows of columns 1..n, overrides row_hash.
        complemented: Whether this is the complement sketch.
    """

    m: int
    n: int
    seed: int = 0
    sign_hash: SignHash | None = None
    row_hash: KWiseHash | None = None
    sign_table: np.ndarray | None = None
    row_table: np.ndarray | None = None
    complemented: bool = False

    @classmethod
    def sample(cls, m: int, n: int, seed: int) -> CountSketchSpec:
        """Draw a count sketch from its hash families."""
        if m < 1 or n < 1:
            raise ValidationError(f"Invalid count sketch size m={m}, n={n}", code="invalid_sketch")
        return cls(
            m=m,
            n=n,
            seed=seed,
            sign_hash=sign_new(derive_seed(seed, SEED_TAG_SIGN), n),
            row_hash=row_hash_new(derive_seed(seed, SEED_TAG_ROW), n, m),
        )

    @classmethod
    def from_tables(
        cls,
        m: int,
        signs: Sequence[int] | np.ndarray,
        rows: Sequence[int] | np.ndarray,
        *,
        complemented: bool = False,
    ) -> CountSketchSpec:
        """Build a sketch with fixed signs and 1-based rows per column."""
        sign_table = np.asarray(signs, dtype=np.int64).reshape(-1)
        row_table = np.asarray(rows, dtype=np.int64).reshape(-1)
        if sign_table.shape != row_table.shape or sign_table.size == 0:
            raise ValidationError("Sign and row tables must be non-empty and of equal length", code="invalid_sketch")
        if not np.all(np.abs(sign_table) == 1):
            raise ValidationError("Signs must be +1 or -1", code="invalid_sketch")
        if np.any(row_table < 1) or np.any(row_table > m):
            raise ValidationError(f"Rows must lie in [1, {m}]", code="invalid_sketch")
        return cls(
            m=m,
            n=int(sign_table.size),
            sign_table=sign_table,
            row_table=row_table,
            complemented=complemented,
        )

    def _indices(self, index: Any) -> np.ndarray:
        idx = np.asarray(index, dtype=np.int64)
        if idx.size and (idx.min() < 1 or idx.max() > self.n):
            raise ValidationError(f"Column index outside [1, {self.n}]", code="index_out_of_range")
        return idx

    def signs(self, index: Any) -> np.ndarray:
        """Return s(i) for an array of 1-based columns."""
        idx = self._indices(index)
        if self.sign_table is not None:
            return self.sign_table[idx - 1]
        assert self.sign_hash is not None
        return 1 - 2 * (self.sign_hash.hash.evaluate(idx) % 2).astype(np.int64)

    def base_rows(self, index: Any) -> np.ndarray:
        """Return h(i) - 1 (uncomplemented, 0-based) for an array of columns."""
        idx = self._indices(index)
        if self.row_table is not None:
            return self.row_table[idx - 1] - 1
        assert self.row_hash is not None
        return (self.row_hash.evaluate(idx) % self.m).astype(np.int64)

    def rows(self, index: Any) -> np.ndarray:
        """Return the effective 0-based rows, honoring the complement flag."""
        base = self.base_rows(index)
        return (-base) % self.m if self.complemented else base

    def column(self, i: int) -> tuple[int, int]:
        """Return (sign, 1-based row) of column i."""
        return int(self.signs([i])[0]), int(self.rows([i])[0]) + 1

    def __eq__(self, other: object) -> bool:
        """Two specs are equal when they describe the same matrix."""
        if not isinstance(other, CountSketchSpec):
            return NotImplemented
        if (self.m, self.n, self.complemented) != (other.m, other.n, other.complemented):
            return False
        columns = np.arange(1, self.n + 1)
        return np.array_equal(self.signs(columns), other.signs(columns)) and np.array_equal(
            self.rows(columns), other.rows(columns)
        )

    def __repr__(self) -> str:
        """Short representation."""
        return f"CountSketchSpec(m={self.m}, n={self.n}, seed={self.seed}, complemented={self.complemented})"


def cs_complement(spec: CountSketchSpec) -> CountSketchSpec:
    """Return the complement sketch (same hashes, flag toggled)."""
    return replace(spec, complemented=not spec.complemented)


def _vector_entries(x: SparseTensor | np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Return (1-based columns, values) of a vector argument."""
    if isinstance(x, SparseTensor):
        if x.order != 1:
            raise ValidationError(f"Count sketch needs a vector, got order {x.order}", code="order_mismatch")
        if x.shape[0] > n:
            raise ValidationError(f"Vector length {x.shape[0]} exceeds sketch domain {n}", code="dimension_mismatch")
        return x.coords[:, 0], x.values
    dense = np.asarray(x, dtype=np.float64).reshape(-1)
    if dense.shape[0] > n:
        raise ValidationError(f"Vector length {dense.shape[0]} exceeds sketch domain {n}", code="dimension_mismatch")
    nonzero = np.flatnonzero(dense)
    return nonzero + 1, dense[nonzero]


def cs_apply(spec: CountSketchSpec, x: SparseTensor | np.ndarray) -> np.ndarray:
    """
    Return C x as a real m-vector.

    Args:
        spec: The count sketch.
        x: Sparse order-1 tensor or dense vector over [n].
    """
    columns, values = _vector_entries(x, spec.n)
    return np.bincount(spec.rows(columns), weights=spec.signs(columns) * values, minlength=spec.m).astype(np.float64)


def cs_unit(spec: CountSketchSpec, i: int = 1) -> np.ndarray:
    """Return C e_i."""
    sign, row = spec.column(i)
    result = np.zeros(spec.m)
    result[row - 1] = sign
    return result
