"""Tests for graph views of tensor networks."""

from __future__ import annotations

import numpy as np
import pytest

from tncsketch.exceptions import CyclicNetworkError, PartialNetworkError, ValidationError
from tncsketch.network import (
    TensorNetwork,
    build_rooted_tree,
    component_members,
    connected_components,
    contraction_graph,
    default_root,
    find_cycle,
    is_acyclic,
    subnetwork,
)
from tncsketch.oracle import contract_exact
from tncsketch.tensor import SparseTensor

pytestmark = pytest.mark.unit


def test_contraction_graph_keeps_parallel_edges(example1: TensorNetwork) -> None:
    graph = contraction_graph(example1)

    assert sorted(graph.nodes) == [1, 2, 3, 4]
    assert graph.number_of_edges(1, 2) == 2
    assert graph.number_of_edges(3, 4) == 1


def test_chain_and_tree_are_acyclic(chain: TensorNetwork, tree7: TensorNetwork) -> None:
    assert is_acyclic(chain)
    assert is_acyclic(tree7)
    assert find_cycle(chain) is None


def test_triangle_cycle(triangle: TensorNetwork) -> None:
    assert not is_acyclic(triangle)
    cycle = find_cycle(triangle)

    assert cycle is not None
    assert sorted(cycle) == [1, 2, 3]


def test_parallel_contractions_form_a_cycle(example1: TensorNetwork) -> None:
    assert not is_acyclic(example1)
    assert sorted(find_cycle(example1) or []) == [1, 2]


def test_trace_is_a_self_loop() -> None:
    net = TensorNetwork.of((SparseTensor.from_dense(np.eye(3)),), [(1, 2)])

    assert not is_acyclic(net)
    assert find_cycle(net) == [1]


def test_components_and_subnetwork(rng: np.random.Generator) -> None:
    vectors = [SparseTensor.from_dense(rng.integers(-3, 4, size=3)) for _ in range(4)]
    net = TensorNetwork.of(vectors, [(1, 3), (2, 4)])

    assert component_members(net) == [[1, 3], [2, 4]]
    parts = connected_components(net)
    assert [p.contractions for p in parts] == [((1, 2),), ((1, 2),)]
    assert parts[0].tensors == (vectors[0], vectors[2])

    product = contract_exact(parts[0]).value() * contract_exact(parts[1]).value()
    assert contract_exact(net).value() == pytest.approx(product)


def test_connected_network_is_its_own_component(chain: TensorNetwork) -> None:
    assert connected_components(chain) == [chain]


def test_subnetwork_drops_outside_contractions(example1: TensorNetwork) -> None:
    sub = subnetwork(example1, [3, 4])

    assert sub.contractions == ((1, 2),)
    assert sub.free_modes == (3,)


def test_default_root_is_first_tensor_of_maximum_order(tree7: TensorNetwork, chain: TensorNetwork) -> None:
    assert default_root(tree7) == 1
    assert default_root(chain) == 2


def test_rooted_tree_of_tree7(tree7: TensorNetwork) -> None:
    tree = build_rooted_tree(tree7)

    assert tree.root == 1
    assert dict(tree.children) == {1: (2, 3, 4), 2: (5, 6), 3: (), 4: (7,), 5: (), 6: (), 7: ()}
    assert dict(tree.parent) == {2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 4}
    assert tree.num_edges == 6
    position = {k: i for i, k in enumerate(tree.post_order)}
    for child, parent in tree.parent.items():
        assert position[child] < position[parent]
    assert tree.post_order[-1] == 1


def test_rooting_elsewhere_moves_parent_mode_first(tree7: TensorNetwork) -> None:
    tree = build_rooted_tree(tree7, root=7)

    assert tree.root == 7
    assert tree.parent[4] == 7
    # X4 joins X7 through its second mode
    assert tree.permutations[4] == (2, 1)
    assert tree.permutations[1] == (3, 1, 2)


@pytest.mark.parametrize("root", [1, 3, 5, 7])
def test_rooted_tree_rebuilds_the_same_value(tree7: TensorNetwork, root: int) -> None:
    tree = build_rooted_tree(tree7, root=root)

    assert contract_exact(tree.to_network()).value() == pytest.approx(contract_exact(tree7).value())


def test_rooted_tree_errors(example1: TensorNetwork, triangle: TensorNetwork, chain: TensorNetwork) -> None:
    with pytest.raises(PartialNetworkError):
        build_rooted_tree(example1)
    with pytest.raises(CyclicNetworkError) as err:
        build_rooted_tree(triangle)
    assert sorted(err.value.cycle) == [1, 2, 3]
    with pytest.raises(ValidationError) as err_root:
        build_rooted_tree(chain, root=9)
    assert err_root.value.code == "invalid_root"


def test_rooted_tree_needs_a_connected_network() -> None:
    ones = SparseTensor.from_dense(np.ones(2))
    net = TensorNetwork.of((ones, ones, ones, ones), [(1, 2), (3, 4)])

    with pytest.raises(ValidationError) as err:
        build_rooted_tree(net)
    assert err.value.code == "disconnected_network"
