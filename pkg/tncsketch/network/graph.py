"""
Graph views of a tensor network.

The contraction multigraph has one node per tensor (1-based) and one edge
per contraction; self-loops and parallel edges are kept, so a network is
acyclic exactly when this multigraph is a forest.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import networkx as nx

from tncsketch.const import LOGGER
from tncsketch.exceptions import CyclicNetworkError, PartialNetworkError, ValidationError
from tncsketch.tensor import SparseTensor, permute_modes

from .model import TensorNetwork


def contraction_graph(net: TensorNetwork) -> nx.MultiGraph:
    """Return the tensor/contraction multigraph, edges keyed by their mode pair."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(1, net.num_tensors + 1))
    for u, v in net.contractions:
        ku, kv = net.mode_owner(u)[0], net.mode_owner(v)[0]
        graph.add_edge(ku, kv, key=(u, v), modes=(u, v))
    return graph


def is_acyclic(net: TensorNetwork) -> bool:
    """True iff the contraction multigraph contains no cycle."""
    if not net.tensors:
        return True
    return nx.is_forest(contraction_graph(net))


def find_cycle(net: TensorNetwork) -> list[int] | None:
    """Return the tensors along one cycle, or None for acyclic networks."""
    try:
        edges = nx.find_cycle(contraction_graph(net))
    except nx.NetworkXNoCycle:
        return None
    return [int(edge[0]) for edge in edges]


def component_members(net: TensorNetwork) -> list[list[int]]:
    """Return the tensor indices of every connected component, ordered by their first tensor."""
    components = [sorted(c) for c in nx.connected_components(contraction_graph(net))]
    return sorted(components, key=lambda c: c[0])


def subnetwork(net: TensorNetwork, members: list[int]) -> TensorNetwork:
    """Return the network induced by a set of tensors, modes renumbered."""
    chosen = sorted(members)
    renumber: dict[int, int] = {}
    for k in chosen:
        for u in net.modes_of(k):
            renumber[u] = len(renumber) + 1
    pairs = [(renumber[u], renumber[v]) for u, v in net.contractions if u in renumber and v in renumber]
    return TensorNetwork.of((net.tensors[k - 1] for k in chosen), pairs)


def connected_components(net: TensorNetwork) -> list[TensorNetwork]:
    """Split a network into its connected components."""
    members = component_members(net)
    if len(members) == 1:
        return [net]
    return [subnetwork(net, m) for m in members]


@dataclass(frozen=True)
class RootedTree:
    """
    Contraction plan of an acyclic connected full network.

    Attributes:
        root: Root tensor index o.
        children: Gamma(k), the children of every tensor in mode order.
        parent: Parent of every non-root tensor.
        permutations: Mode permutation applied to each tensor (1-based,
            mode j of the permuted tensor is mode perm[j] of the original).
            Non-root tensors have the parent mode first.
        tensors: The permuted tensors.
        post_order: Tensors with every child before its parent.
    """

    root: int
    children: Mapping[int, tuple[int, ...]]
    parent: Mapping[int, int]
    permutations: Mapping[int, tuple[int, ...]]
    tensors: Mapping[int, SparseTensor]
    post_order: tuple[int, ...]

    @property
    def num_edges(self) -> int:
        """Number of tree edges t."""
        return len(self.parent)

    def to_network(self) -> TensorNetwork:
        """Rebuild the network from the permuted tensors and the tree edges."""
        order = sorted(self.tensors)
        offsets: dict[int, int] = {}
        total = 0
        for k in order:
            offsets[k] = total
            total += self.tensors[k].order
        pairs = []
        for k in order:
            first_child_mode = 1 if k == self.root else 2
            for j, child in enumerate(self.children[k]):
                pairs.append((offsets[k] + first_child_mode + j, offsets[child] + 1))
        return TensorNetwork.of((self.tensors[k] for k in order), pairs)


def default_root(net: TensorNetwork) -> int:
    """Tensor of maximum order, lowest index on ties."""
    orders = [x.order for x in net.tensors]
    return orders.index(max(orders)) + 1


def build_rooted_tree(net: TensorNetwork, root: int | None = None) -> RootedTree:
    """
    Root an acyclic connected full network.

    Args:
        net: Normalized network.
        root: Root tensor (1-based); default_root() when None.

    Raises:
        PartialNetworkError: The network has free modes.
        CyclicNetworkError: The contraction multigraph has a cycle.
        ValidationError: The network is disconnected or the root is invalid.
    """
    if not net.is_full:
        raise PartialNetworkError(
            f"Rooted trees need a full network, free modes {list(net.free_modes)}",
            details={"free_modes": list(net.free_modes)},
        )
    cycle = find_cycle(net)
    if cycle is not None:
        raise CyclicNetworkError(cycle)
    if len(component_members(net)) != 1:
        raise ValidationError("Rooted trees need a connected network", code="disconnected_network")
    root = default_root(net) if root is None else root
    if not 1 <= root <= net.num_tensors:
        raise ValidationError(f"Root {root} outside 1..{net.num_tensors}", code="invalid_root")

    children: dict[int, tuple[int, ...]] = {}
    parent: dict[int, int] = {}
    permutations: dict[int, tuple[int, ...]] = {}
    tensors: dict[int, SparseTensor] = {}
    visit = [root]
    parent_mode: dict[int, int] = {}
    for k in visit:
        local_modes = list(range(1, net.tensors[k - 1].order + 1))
        if k != root:
            first = parent_mode[k]
            local_modes.remove(first)
            local_modes.insert(0, first)
        permutations[k] = tuple(local_modes)
        tensors[k] = permute_modes(net.tensors[k - 1], local_modes)

        kids: list[int] = []
        for local in local_modes[0 if k == root else 1 :]:
            (partner,) = net.partner[net.global_mode(k, local)]
            child, child_local = net.mode_owner(partner)
            parent[child] = k
            parent_mode[child] = child_local
            kids.append(child)
            visit.append(child)
        children[k] = tuple(kids)

    post_order = tuple(reversed(visit))
    LOGGER.debug("Rooted tree at X%d with %d edges", root, len(parent))
    return RootedTree(
        root=root,
        children=children,
        parent=parent,
        permutations=permutations,
        tensors=tensors,
        post_order=post_order,
    )
