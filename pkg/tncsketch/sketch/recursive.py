"""
Recursive sketch.

R = Q_2 Q_4 ... Q_q S with S = C_1 kron ... kron C_q (leaf count sketches) and
Q_l = T_(l,1) kron ... kron T_(l,l/2), where every T_(l,j) is a tensor sketch
over [m] x [m]. The logical order c is padded to a power of two q >= 2;
padded leaves act on the index 1 of a size-1 domain, which is the e_1
embedding of the missing modes.

Two evaluation forms read the same spec: per-column hashing (rs_hash,
rs_apply_tensor) and the level-by-level reduction of already sketched child
vectors (rs_apply_children). An order-0 spec is the 1 x 1 identity.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from tncsketch.const import SEED_TAG_LEAF, SEED_TAG_NODE
from tncsketch.exceptions import ValidationError
from tncsketch.fft import next_power_of_two
from tncsketch.hashing import derive_seed
from tncsketch.tensor import MultiIndex, SparseTensor

from .count import CountSketchSpec, cs_unit
from .tensor import TensorSketchSpec, ts_combine_pair, ts_hash_many


def padded_order(c: int) -> int:
    """Return the number of leaves q of a recursive sketch of logical order c."""
    if c < 0:
        raise ValidationError(f"Negative sketch order {c}", code="invalid_sketch")
    if c == 0:
        return 0
    return max(2, next_power_of_two(c))


@dataclass(frozen=True, eq=False)
class RecursiveSketchSpec:
    """
    Seeded description of a recursive sketch matrix R in R^(m x prod(n)).

    Attributes:
        m: Sketch size.
        leaf_sizes: Domain sizes of the c logical leaves.
        leaves: q leaf count sketches; leaves[c:] are the padding leaves over [1].
        levels: levels[j] holds the tensor sketches of level l = q / 2^j, bottom first,
            so levels[0] has q/2 nodes and levels[-1] has one.
        seed: Seed the spec was sampled from.
    """

    m: int
    leaf_sizes: tuple[int, ...]
    leaves: tuple[CountSketchSpec, ...]
    levels: tuple[tuple[TensorSketchSpec, ...], ...]
    seed: int = 0

    def __post_init__(self) -> None:
        """Check the binary-tree structure."""
        q = padded_order(len(self.leaf_sizes))
        if len(self.leaves) != q:
            raise ValidationError(f"Expected {q} leaf sketches, got {len(self.leaves)}", code="invalid_sketch")
        width = q
        for level in self.levels:
            if len(level) != width // 2 or any(node.order != 2 or node.m != self.m for node in level):
                raise ValidationError("Malformed recursive sketch level", code="invalid_sketch")
            width //= 2
        if q and width != 1:
            raise ValidationError("Recursive sketch levels do not reduce to one node", code="invalid_sketch")

    @classmethod
    def sample(cls, m: int, leaf_sizes: Sequence[int], seed: int) -> RecursiveSketchSpec:
        """Draw all leaf and node sketches from one seed."""
        sizes = tuple(int(n) for n in leaf_sizes)
        q = padded_order(len(sizes))
        padded = sizes + (1,) * (q - len(sizes))
        leaves = tuple(
            CountSketchSpec.sample(m, n, derive_seed(seed, SEED_TAG_LEAF, index)) for index, n in enumerate(padded)
        )
        levels: list[tuple[TensorSketchSpec, ...]] = []
        width = q
        while width >= 2:
            levels.append(
                tuple(
                    TensorSketchSpec.sample(m, (m, m), derive_seed(seed, SEED_TAG_NODE, width, j))
                    for j in range(width // 2)
                )
            )
            width //= 2
        return cls(m=m, leaf_sizes=sizes, leaves=leaves, levels=tuple(levels), seed=seed)

    @property
    def order(self) -> int:
        """Logical order c."""
        return len(self.leaf_sizes)

    @property
    def padded_order(self) -> int:
        """Number of leaves q."""
        return len(self.leaves)

    @property
    def output_dim(self) -> int:
        """Rows of R: m, or 1 for the order-0 identity."""
        return self.m if self.order else 1


def _check_coords(coords: np.ndarray, order: int) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    if coords.ndim != 2 or coords.shape[1] != order:
        raise ValidationError(f"Expected an (N, {order}) index array, got shape {coords.shape}", code="order_mismatch")
    return coords


def rs_hash_many(spec: RecursiveSketchSpec, coords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorized recursive sketch hashing.

    Args:
        spec: The recursive sketch.
        coords: (N, c) array of 1-based multi-indices over the logical modes.

    Returns:
        (signs, 0-based rows), both of length N.
    """
    coords = _check_coords(coords, spec.order)
    count = coords.shape[0]
    if spec.order == 0:
        return np.ones(count, dtype=np.int64), np.zeros(count, dtype=np.int64)

    signs = np.ones(count, dtype=np.int64)
    rows: list[np.ndarray] = []
    pad = np.ones(count, dtype=np.int64)
    for index, leaf in enumerate(spec.leaves):
        column = coords[:, index] if index < spec.order else pad
        signs *= leaf.signs(column)
        rows.append(leaf.rows(column))

    for level in spec.levels:
        reduced: list[np.ndarray] = []
        for j, node in enumerate(level):
            node_signs, node_rows = ts_hash_many(node, np.column_stack([rows[2 * j], rows[2 * j + 1]]) + 1)
            signs *= node_signs
            reduced.append(node_rows)
        rows = reduced
    return signs, rows[0]


def rs_hash(spec: RecursiveSketchSpec, i: MultiIndex) -> tuple[int, int]:
    """Return (sign, 1-based bucket) of column i of the recursive sketch."""
    if len(i) != spec.order:
        raise ValidationError(
            f"Index {tuple(i)} does not address an order-{spec.order} recursive sketch", code="order_mismatch"
        )
    signs, rows = rs_hash_many(spec, np.asarray([tuple(i)], dtype=np.int64).reshape(1, spec.order))
    return int(signs[0]), int(rows[0]) + 1


def rs_apply_tensor(spec: RecursiveSketchSpec, x: SparseTensor) -> np.ndarray:
    """Return R vec(X) by per-entry accumulation."""
    if x.order != spec.order:
        raise ValidationError(
            f"Tensor of order {x.order} does not match recursive sketch of order {spec.order}", code="order_mismatch"
        )
    for k, (size, limit) in enumerate(zip(x.shape, spec.leaf_sizes, strict=True)):
        if size > limit:
            raise ValidationError(
                f"Mode {k + 1} of size {size} exceeds sketch domain {limit}", code="dimension_mismatch"
            )
    signs, rows = rs_hash_many(spec, x.coords)
    return np.bincount(rows, weights=signs * x.values, minlength=spec.output_dim).astype(np.float64)


def rs_apply_children(spec: RecursiveSketchSpec, xs: Sequence[np.ndarray]) -> np.ndarray:
    """
    Reduce already sketched children through the Q chain.

    Args:
        spec: The recursive sketch.
        xs: c vectors of length m; xs[l] stands for C_l g_l.

    Returns:
        Q_2 ... Q_q (x_1 kron ... kron x_q) with padded children C_l e_1.
    """
    if len(xs) != spec.order:
        raise ValidationError(f"Expected {spec.order} child sketches, got {len(xs)}", code="arity_mismatch")
    if spec.order == 0:
        return np.ones(1)

    current = [np.asarray(x, dtype=np.float64).reshape(-1) for x in xs]
    if any(x.shape[0] != spec.m for x in current):
        raise ValidationError(f"Child sketches must have length {spec.m}", code="dimension_mismatch")
    current.extend(cs_unit(leaf, 1) for leaf in spec.leaves[spec.order :])

    for level in spec.levels:
        current = [ts_combine_pair(node, current[2 * j], current[2 * j + 1]) for j, node in enumerate(level)]
    return current[0]
