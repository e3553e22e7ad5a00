"""
Sketch package.

Count, complement count, tensor and recursive sketches. Every sketch is a
seeded spec object; the hash form (per-nonzero accumulation) and the dense
form (small-size oracle) both read the same spec.
"""

from __future__ import annotations

from .count import CountSketchSpec, cs_apply, cs_complement, cs_unit
from .dense import cs_dense, row_wise_kronecker, rs_dense, ts_dense
from .recursive import (
    RecursiveSketchSpec,
    padded_order,
    rs_apply_children,
    rs_apply_tensor,
    rs_hash,
    rs_hash_many,
)
from .tensor import TensorSketchSpec, ts_apply_tensor, ts_combine_pair, ts_hash, ts_hash_many

__all__ = [
    "CountSketchSpec",
    "RecursiveSketchSpec",
    "TensorSketchSpec",
    "cs_apply",
    "cs_complement",
    "cs_dense",
    "cs_unit",
    "padded_order",
    "row_wise_kronecker",
    "rs_apply_children",
    "rs_apply_tensor",
    "rs_dense",
    "rs_hash",
    "rs_hash_many",
    "ts_apply_tensor",
    "ts_combine_pair",
    "ts_dense",
    "ts_hash",
    "ts_hash_many",
]
