"""
Tensor network package.

The network model with validation, the value-preserving normalization,
graph views (acyclicity, components, rooted trees) and network files.
"""

from __future__ import annotations

from .graph import (
    RootedTree,
    build_rooted_tree,
    component_members,
    connected_components,
    contraction_graph,
    default_root,
    find_cycle,
    is_acyclic,
    subnetwork,
)
from .io import dump_network, load_network, network_from_document, read_document
from .model import (
    Contraction,
    Diagnostic,
    TensorNetwork,
    ensure_normalized,
    ensure_valid,
    fix_free_modes,
    normalization_violations,
    validate,
)
from .normalize import (
    RULE_DIAGONAL,
    RULE_FUSE,
    RULE_PAD,
    RULE_SUM_OUT,
    RULE_VIRTUAL_COPY,
    EntryMap,
    NormalizationResult,
    NormalizationStep,
    normalize_wlog,
)

__all__ = [
    "RULE_DIAGONAL",
    "RULE_FUSE",
    "RULE_PAD",
    "RULE_SUM_OUT",
    "RULE_VIRTUAL_COPY",
    "Contraction",
    "Diagnostic",
    "EntryMap",
    "NormalizationResult",
    "NormalizationStep",
    "RootedTree",
    "TensorNetwork",
    "build_rooted_tree",
    "component_members",
    "connected_components",
    "contraction_graph",
    "default_root",
    "dump_network",
    "ensure_normalized",
    "ensure_valid",
    "find_cycle",
    "fix_free_modes",
    "is_acyclic",
    "load_network",
    "network_from_document",
    "normalization_violations",
    "normalize_wlog",
    "read_document",
    "subnetwork",
    "validate",
]
