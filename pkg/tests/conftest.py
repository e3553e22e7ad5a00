"""Shared fixtures for tncsketch tests."""

from __future__ import annotations

from collections.abc import Callable
import json
from pathlib import Path

import numpy as np
import pytest

from tncsketch.data import EdgeList, Relation
from tncsketch.network import TensorNetwork
from tncsketch.tensor import SparseTensor

type NetworkFactory = Callable[..., TensorNetwork]


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator; every test gets the same stream."""
    return np.random.default_rng(1234)


def random_integer_tensor(
    rng: np.random.Generator, shape: tuple[int, ...], low: int = -3, high: int = 4
) -> SparseTensor:
    """Dense random integer tensor as a SparseTensor."""
    return SparseTensor.from_dense(rng.integers(low, high, size=shape))


@pytest.fixture
def random_network(rng: np.random.Generator) -> NetworkFactory:
    """Build networks with random integer entries for given shapes and contractions."""

    def factory(shapes: list[tuple[int, ...]], contractions: list[tuple[int, int]]) -> TensorNetwork:
        return TensorNetwork.of((random_integer_tensor(rng, shape) for shape in shapes), contractions)

    return factory


@pytest.fixture
def matrix_product() -> TensorNetwork:
    """A B for A = [[1, 2], [3, 4]], B = [[5, 6], [7, 8]]."""
    a = SparseTensor.from_dense([[1, 2], [3, 4]])
    b = SparseTensor.from_dense([[5, 6], [7, 8]])
    return TensorNetwork.of((a, b), [(2, 3)])


@pytest.fixture
def example1_ones() -> TensorNetwork:
    """Four all-ones tensors, contractions {(1, 5), (3, 4), (6, 7)}, free modes 2 and 8."""
    shapes = [(2, 2, 2), (2, 2), (2,), (2, 2)]
    return TensorNetwork.of((SparseTensor.from_dense(np.ones(shape)) for shape in shapes), [(1, 5), (3, 4), (6, 7)])


@pytest.fixture
def example1(random_network: NetworkFactory) -> TensorNetwork:
    """The same layout with random integer entries."""
    return random_network([(2, 2, 2), (2, 2), (2,), (2, 2)], [(1, 5), (3, 4), (6, 7)])


@pytest.fixture
def chain(random_network: NetworkFactory) -> TensorNetwork:
    """x - Y - z with n = 4."""
    return random_network([(4,), (4, 4), (4,)], [(1, 2), (3, 4)])


@pytest.fixture
def triangle(random_network: NetworkFactory) -> TensorNetwork:
    """X, Y, Z in R^(4 x 4) with contractions {(2, 3), (4, 5), (1, 6)}: tr(X Y Z)."""
    return random_network([(4, 4), (4, 4), (4, 4)], [(2, 3), (4, 5), (1, 6)])


@pytest.fixture
def tree7(random_network: NetworkFactory) -> TensorNetwork:
    """Seven-tensor tree rooted at X1 with n = 3."""
    return random_network(
        [(3, 3, 3), (3, 3, 3), (3,), (3, 3), (3,), (3,), (3,)],
        [(1, 4), (2, 7), (3, 8), (5, 10), (6, 11), (9, 12)],
    )


@pytest.fixture
def query_relations() -> list[Relation]:
    """Four small relations for R1.a = R2.b, R3.d = R2.b, R4.e = R2.c."""
    return [
        Relation("R1", ("a", "x"), (("1", "p"), ("2", "q"), ("2", "r"), ("3", "s"))),
        Relation("R2", ("b", "c"), (("1", "u"), ("2", "u"), ("2", "v"), ("4", "w"))),
        Relation("R3", ("d",), (("1",), ("2",), ("2",), ("5",))),
        Relation("R4", ("e", "y"), (("u", "1"), ("v", "1"), ("v", "2"))),
    ]


@pytest.fixture
def query_joins() -> list[tuple[str, str]]:
    """Predicates of the four-relation query."""
    return [("R1.a", "R2.b"), ("R3.d", "R2.b"), ("R4.e", "R2.c")]


@pytest.fixture
def k4() -> EdgeList:
    """Complete directed graph on 4 nodes (every ordered pair, no loops)."""
    return EdgeList.of(4, [(u, v) for u in range(1, 5) for v in range(1, 5) if u != v])


@pytest.fixture
def query_files(tmp_path: Path, query_relations: list[Relation], query_joins: list[tuple[str, str]]) -> Path:
    """Write the query relations as CSV files plus a join spec; return the spec path."""
    specs = []
    for relation in query_relations:
        lines = [",".join(relation.attrs), *(",".join(row) for row in relation.rows)]
        (tmp_path / f"{relation.name}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        specs.append({"name": relation.name, "file": f"{relation.name}.csv", "attrs": list(relation.attrs)})
    spec = tmp_path / "query.json"
    spec.write_text(json.dumps({"relations": specs, "joins": [list(p) for p in query_joins]}), encoding="utf-8")
    return spec
