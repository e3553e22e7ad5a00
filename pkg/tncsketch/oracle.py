"""
Exact reference computations.

contract_exact evaluates a network by one direct summation over every
index class (np.einsum without path optimization); contract_exact_pairwise
folds the tensors in one at a time. Integer-valued networks are summed in
int64 so equality checks are exact.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import itertools
import math
import string

import numpy as np
from networkx.utils import UnionFind

from .const import DEFAULT_ORACLE_BUDGET, LOGGER
from .data import EdgeList, OracleBudget, Relation
from .exceptions import BudgetExceededError, ValidationError
from .network import TensorNetwork, ensure_valid
from .tensor import SparseTensor, is_integer_valued, to_dense

MAX_INDEX_LABELS = len(string.ascii_letters)


def _budget(budget: int | OracleBudget) -> OracleBudget:
    return budget if isinstance(budget, OracleBudget) else OracleBudget(int(budget))


def _class_labels(net: TensorNetwork) -> list[int]:
    classes = UnionFind(range(1, net.num_modes + 1))
    for u, v in net.contractions:
        classes.union(u, v)
    label_of: dict[int, int] = {}
    for number, members in enumerate(sorted(classes.to_sets(), key=min)):
        for u in members:
            label_of[u] = number
    return [label_of[u] for u in range(1, net.num_modes + 1)]


def _dense_operands(net: TensorNetwork, budget: OracleBudget) -> list[np.ndarray]:
    dtype = np.dtype(np.int64) if all(is_integer_valued(x) for x in net.tensors) else np.dtype(np.float64)
    operands = []
    for k, x in enumerate(net.tensors, start=1):
        budget.check(x.size, f"dense form of X{k}")
        operands.append(to_dense(x, dtype=dtype).values)
    return operands


def _result_tensor(result: np.ndarray) -> SparseTensor:
    if result.ndim == 0:
        return SparseTensor.scalar(float(result))
    return SparseTensor.from_dense(result)


def contract_exact(net: TensorNetwork, budget: int | OracleBudget = DEFAULT_ORACLE_BUDGET) -> SparseTensor:
    """
    Contract a network by direct summation.

    Args:
        net: A valid network.
        budget: Largest number of summand evaluations (product of the index class sizes).

    Returns:
        Order-0 tensor for full networks, otherwise the tensor over the free modes.

    Raises:
        BudgetExceededError: The index space is larger than the budget.
    """
    ensure_valid(net)
    budget = _budget(budget)
    labels = _class_labels(net)
    class_sizes = {label: net.mode_size(u) for u, label in enumerate(labels, start=1)}
    if len(class_sizes) > MAX_INDEX_LABELS:
        raise BudgetExceededError(
            f"{len(class_sizes)} index classes exceed the {MAX_INDEX_LABELS} a direct summation supports",
            code="too_many_indices",
        )
    budget.check(math.prod(class_sizes.values()), "direct summation")

    operands = _dense_operands(net, budget)
    arguments: list[object] = []
    for k, operand in enumerate(operands, start=1):
        arguments.extend([operand, [labels[u - 1] for u in net.modes_of(k)]])
    output = [labels[u - 1] for u in net.free_modes]
    result = np.einsum(*arguments, output, optimize=False)
    LOGGER.debug("Exact contraction over %d index classes", len(class_sizes))
    return _result_tensor(np.asarray(result))


def contract_exact_pairwise(
    net: TensorNetwork,
    order: Sequence[int] | None = None,
    budget: int | OracleBudget = DEFAULT_ORACLE_BUDGET,
) -> SparseTensor:
    """
    Contract a network by folding in one tensor at a time.

    Args:
        net: A valid network.
        order: Elimination order, a permutation of the tensor indices 1..p
            (default 1..p).
        budget: Largest index space of a single pairwise step.
    """
    ensure_valid(net)
    budget = _budget(budget)
    p = net.num_tensors
    order = list(range(1, p + 1)) if order is None else [int(k) for k in order]
    if sorted(order) != list(range(1, p + 1)):
        raise ValidationError(f"{order} is not an elimination order of tensors 1..{p}", code="invalid_order")

    labels = _class_labels(net)
    if len(set(labels)) > MAX_INDEX_LABELS:
        raise BudgetExceededError(
            f"{len(set(labels))} index classes exceed the {MAX_INDEX_LABELS} a pairwise step supports",
            code="too_many_indices",
        )
    sizes = {labels[u - 1]: net.mode_size(u) for u in range(1, net.num_modes + 1)}
    free = [labels[u - 1] for u in net.free_modes]
    operands = _dense_operands(net, budget)
    tensor_labels = {k: [labels[u - 1] for u in net.modes_of(k)] for k in range(1, p + 1)}

    def needed_after(step: int) -> set[int]:
        later = {label for k in order[step + 1 :] for label in tensor_labels[k]}
        return later | set(free)

    first = order[0]
    current_labels = [label for label in dict.fromkeys(tensor_labels[first]) if label in needed_after(0)]
    current = np.einsum(operands[first - 1], tensor_labels[first], current_labels, optimize=False)

    for step, k in enumerate(order[1:], start=1):
        involved = set(current_labels) | set(tensor_labels[k])
        budget.check(math.prod(sizes[label] for label in involved), f"pairwise step with X{k}")
        needed = needed_after(step)
        out = [label for label in dict.fromkeys([*current_labels, *tensor_labels[k]]) if label in needed]
        current = np.einsum(current, current_labels, operands[k - 1], tensor_labels[k], out, optimize=False)
        current_labels = out

    result = np.einsum(current, current_labels, free, optimize=False)
    return _result_tensor(np.asarray(result))


def _split_attribute(ref: str) -> tuple[str, str]:
    name, _, attr = ref.partition(".")
    return name, attr


def join_size_nested_loop(relations: Sequence[Relation], joins: Sequence[tuple[str, str]]) -> int:
    """
    Count the tuples of an equi-join by nested loops.

    Args:
        relations: The relations of the query.
        joins: Predicates ("R.a", "S.b") meaning R.a = S.b.
    """
    by_name: Mapping[str, Relation] = {r.name: r for r in relations}
    positions: list[tuple[int, int, int, int]] = []
    names = [r.name for r in relations]
    for left, right in joins:
        (lr, la), (rr, ra) = _split_attribute(left), _split_attribute(right)
        for name, attr in ((lr, la), (rr, ra)):
            if name not in by_name or attr not in by_name[name].attrs:
                raise ValidationError(f"Unknown attribute {name}.{attr}", code="unknown_attribute")
        positions.append((names.index(lr), by_name[lr].attrs.index(la), names.index(rr), by_name[rr].attrs.index(ra)))

    count = 0
    for combination in itertools.product(*(r.rows for r in relations)):
        if all(combination[a][i] == combination[b][j] for a, i, b, j in positions):
            count += 1
    return count


def adjacency_matrix(graph: EdgeList | SparseTensor | np.ndarray) -> np.ndarray:
    """Return a dense integer adjacency matrix."""
    if isinstance(graph, EdgeList):
        matrix = np.zeros((graph.n, graph.n), dtype=np.int64)
        for u, v in graph.edges:
            matrix[u - 1, v - 1] = 1
        return matrix
    if isinstance(graph, SparseTensor):
        if graph.order != 2:
            raise ValidationError(f"Adjacency needs an order-2 tensor, got order {graph.order}", code="not_square")
        return to_dense(graph, dtype=np.int64).values
    return np.asarray(graph)


def triangle_count_exact(adjacency: EdgeList | SparseTensor | np.ndarray) -> float:
    """Return tr(A^3) by direct multiplication."""
    matrix = adjacency_matrix(adjacency)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"Adjacency must be square, got shape {matrix.shape}", code="not_square")
    return float(np.trace(matrix @ matrix @ matrix))
