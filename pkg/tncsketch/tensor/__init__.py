"""
Sparse tensor package.

Coordinate-format tensors with 1-based multi-indices, the index arithmetic
used by every other package, small dense conversions for oracles, and the
COO text format.
"""

from __future__ import annotations

from .dense import DenseTensor, from_dense, is_integer_valued, to_dense
from .io import dump_coo, format_coo, load_coo, parse_coo
from .ops import (
    frobenius_norm,
    inverse_permutation,
    linear_index,
    linear_indices,
    mode_flatten_coords,
    multi_index,
    pad_modes,
    permute_modes,
    slice_tensor,
    vectorize,
)
from .sparse import MultiIndex, SparseTensor, SparseTensorBuilder

__all__ = [
    "DenseTensor",
    "MultiIndex",
    "SparseTensor",
    "SparseTensorBuilder",
    "dump_coo",
    "format_coo",
    "from_dense",
    "frobenius_norm",
    "inverse_permutation",
    "is_integer_valued",
    "linear_index",
    "linear_indices",
    "load_coo",
    "mode_flatten_coords",
    "multi_index",
    "pad_modes",
    "parse_coo",
    "permute_modes",
    "slice_tensor",
    "to_dense",
    "vectorize",
]
