"""
Tensor sketch.

T = idft((dft C_1) . (dft C_2) . ... . (dft C_q)) with row-wise Kronecker
products. Column i = (i_1..i_q) of T has a single nonzero: sign
s_1(i_1)...s_q(i_q) at 0-based row (h0_1(i_1) + ... + h0_q(i_q)) mod m, so T
is applied to a sparse tensor in O(q nnz) by per-entry accumulation.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from tncsketch.const import SEED_TAG_NODE
from tncsketch.exceptions import ValidationError
from tncsketch.fft import circ_conv
from tncsketch.hashing import derive_seed
from tncsketch.tensor import MultiIndex, SparseTensor

from .count import CountSketchSpec, cs_apply


@dataclass(frozen=True, eq=False)
class TensorSketchSpec:
    """Ordered count sketches sharing one sketch size m."""

    components: tuple[CountSketchSpec, ...]

    def __post_init__(self) -> None:
        """Check the components agree on m."""
        components = tuple(self.components)
        if not components:
            raise ValidationError("A tensor sketch needs at least one component", code="invalid_sketch")
        if len({c.m for c in components}) != 1:
            raise ValidationError("Tensor sketch components must share m", code="invalid_sketch")
        object.__setattr__(self, "components", components)

    @classmethod
    def sample(cls, m: int, sizes: Sequence[int], seed: int) -> TensorSketchSpec:
        """Draw q independent count sketches over the given mode sizes."""
        return cls(
            tuple(CountSketchSpec.sample(m, n, derive_seed(seed, SEED_TAG_NODE, k)) for k, n in enumerate(sizes))
        )

    @property
    def m(self) -> int:
        """Sketch size."""
        return self.components[0].m

    @property
    def order(self) -> int:
        """Number of modes q."""
        return len(self.components)

    @property
    def shape(self) -> tuple[int, ...]:
        """Domain sizes of the modes."""
        return tuple(c.n for c in self.components)


def ts_hash_many(spec: TensorSketchSpec, coords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorized tensor sketch hashing.

    Args:
        spec: The tensor sketch.
        coords: (N, q) array of 1-based multi-indices.

    Returns:
        (signs, 0-based rows), both of length N.
    """
    coords = np.asarray(coords, dtype=np.int64).reshape(-1, spec.order)
    signs = np.ones(coords.shape[0], dtype=np.int64)
    rows = np.zeros(coords.shape[0], dtype=np.int64)
    for k, component in enumerate(spec.components):
        signs *= component.signs(coords[:, k])
        rows += component.rows(coords[:, k])
    return signs, rows % spec.m


def ts_hash(spec: TensorSketchSpec, i: MultiIndex) -> tuple[int, int]:
    """Return (sign, 1-based bucket) of column i of the tensor sketch."""
    if len(i) != spec.order:
        raise ValidationError(f"Index {tuple(i)} does not address an order-{spec.order} sketch", code="order_mismatch")
    signs, rows = ts_hash_many(spec, np.asarray([i]))
    return int(signs[0]), int(rows[0]) + 1


def ts_apply_tensor(spec: TensorSketchSpec, x: SparseTensor) -> np.ndarray:
    """Return T vec(X) by per-entry accumulation."""
    if x.order != spec.order:
        raise ValidationError(
            f"Tensor of order {x.order} does not match sketch of order {spec.order}", code="order_mismatch"
        )
    for k, (size, component) in enumerate(zip(x.shape, spec.components, strict=True)):
        if size > component.n:
            raise ValidationError(
                f"Mode {k + 1} of size {size} exceeds sketch domain {component.n}", code="dimension_mismatch"
            )
    signs, rows = ts_hash_many(spec, x.coords)
    return np.bincount(rows, weights=signs * x.values, minlength=spec.m).astype(np.float64)


def ts_combine_pair(spec: TensorSketchSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    Return T (x kron y) for a two-component sketch over [m] x [m].

    Uses dft(T (x kron y)) = dft(C_1 x) o dft(C_2 y), O(m log m).
    """
    if spec.order != 2:
        raise ValidationError(f"Pair combination needs an order-2 sketch, got {spec.order}", code="order_mismatch")
    return circ_conv(cs_apply(spec.components[0], x), cs_apply(spec.components[1], y))
