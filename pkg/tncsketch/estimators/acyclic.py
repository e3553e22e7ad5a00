"""
Acyclic full-contraction estimator.

Works bottom-up over a rooted contraction tree. Every tensor k owns a
recursive sketch R_k over its child modes whose leaf count sketches are the
edge sketches C_(k,l) of its children. A child l reports
x_l = C_(k,l) mat(X_l) R_l^T r_l, where r_l = R_l (x_c1 kron ... kron x_cd) is
built from its own children's reports; leaves use the order-0 identity so
x_l = C_(k,l) vec(X_l). The root returns <R_o vec(X_o), r_o>.
"""

from __future__ import annotations

import numpy as np

from tncsketch.const import LOGGER, SEED_TAG_RECURSIVE
from tncsketch.exceptions import ValidationError
from tncsketch.hashing import derive_seed
from tncsketch.network import RootedTree, TensorNetwork, ensure_normalized
from tncsketch.sketch import CountSketchSpec, RecursiveSketchSpec, rs_apply_children, rs_apply_tensor, rs_hash_many
from tncsketch.tensor import SparseTensor


def sketched_matvec(
    c: CountSketchSpec, x: SparseTensor, r_spec: RecursiveSketchSpec, z: np.ndarray
) -> np.ndarray:
    """
    Return C mat(X) R^T z in O(q nnz(X)) time and O(m) space.

    Args:
        c: Count sketch over the first mode of X.
        x: Tensor of order q >= 1.
        r_spec: Recursive sketch over modes 2..q of X.
        z: Vector of length r_spec.output_dim.
    """
    if x.order < 1:
        raise ValidationError("sketched_matvec needs a tensor of order >= 1", code="order_mismatch")
    if r_spec.order != x.order - 1:
        raise ValidationError(
            f"Recursive sketch of order {r_spec.order} does not match a tensor of order {x.order}",
            code="arity_mismatch",
        )
    z = np.asarray(z, dtype=np.float64).reshape(-1)
    if z.shape[0] != r_spec.output_dim:
        raise ValidationError(f"z has length {z.shape[0]}, expected {r_spec.output_dim}", code="dimension_mismatch")
    if x.shape[0] > c.n:
        raise ValidationError(f"Mode 1 of size {x.shape[0]} exceeds sketch domain {c.n}", code="dimension_mismatch")
    for size, limit in zip(x.shape[1:], r_spec.leaf_sizes, strict=True):
        if size > limit:
            raise ValidationError(f"Mode of size {size} exceeds sketch domain {limit}", code="dimension_mismatch")

    sigma, b = rs_hash_many(r_spec, x.coords[:, 1:])
    first = x.coords[:, 0]
    weights = x.values * z[b] * sigma * c.signs(first)
    return np.bincount(c.rows(first), weights=weights, minlength=c.m).astype(np.float64)


def tree_sketches(tree: RootedTree, m: int, seed: int) -> dict[int, RecursiveSketchSpec]:
    """Sample R_k over the child modes of every tensor."""
    sketches: dict[int, RecursiveSketchSpec] = {}
    for k, x in tree.tensors.items():
        child_sizes = x.shape if k == tree.root else x.shape[1:]
        sketches[k] = RecursiveSketchSpec.sample(m, child_sizes, derive_seed(seed, SEED_TAG_RECURSIVE, k))
    return sketches


def estimate_acyclic_once(net: TensorNetwork, tree: RootedTree, m: int, seed: int) -> float:
    """
    Single-shot acyclic estimate.

    Args:
        net: Normalized, acyclic, connected full network the tree was built from.
        tree: Rooted contraction tree of net.
        m: Sketch size.
        seed: Seed of all recursive sketches.
    """
    ensure_normalized(net)
    if sorted(tree.tensors) != list(range(1, net.num_tensors + 1)):
        raise ValidationError("Rooted tree does not cover the network", code="tree_mismatch")

    sketches = tree_sketches(tree, m, seed)
    reports: dict[int, np.ndarray] = {}
    for k in tree.post_order:
        r_spec = sketches[k]
        r_k = rs_apply_children(r_spec, [reports.pop(child) for child in tree.children[k]])
        if k == tree.root:
            x_o = rs_apply_tensor(r_spec, tree.tensors[k])
            value = float(np.dot(x_o, r_k))
            LOGGER.debug("Acyclic estimate %.6g at root X%d", value, k)
            return value
        parent = tree.parent[k]
        edge = sketches[parent].leaves[tree.children[parent].index(k)]
        reports[k] = sketched_matvec(edge, tree.tensors[k], r_spec, r_k)
    raise ValidationError("Rooted tree has no root in its post order", code="tree_mismatch")
