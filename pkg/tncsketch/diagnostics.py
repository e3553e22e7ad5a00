"""Diagnostics summaries of networks for reports."""

from __future__ import annotations

from typing import Any

from .network import (
    TensorNetwork,
    component_members,
    find_cycle,
    normalization_violations,
    validate,
)
from .tensor import frobenius_norm


def network_diagnostics(net: TensorNetwork) -> dict[str, Any]:
    """Return a plain-dict summary of a network."""
    problems = validate(net)
    summary: dict[str, Any] = {
        "tensors": [
            {
                "index": k,
                "order": x.order,
                "shape": list(x.shape),
                "nnz": x.nnz,
                "norm": frobenius_norm(x),
            }
            for k, x in enumerate(net.tensors, start=1)
        ],
        "contractions": len(net.contractions),
        "free_modes": list(net.free_modes),
        "valid": not problems,
        "problems": [d.as_dict() for d in problems],
    }
    # Graph properties need a valid network
    if problems:
        return summary

    cycle = find_cycle(net)
    summary.update(
        {
            "full": net.is_full,
            "acyclic": cycle is None,
            "cycle": cycle,
            "components": len(component_members(net)),
            "normalized": not normalization_violations(net),
            "norm_product": net.norm_product(),
        }
    )
    return summary
