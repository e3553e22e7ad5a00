"""
Validators package.

Voluptuous schemas for the external file formats and for the merged run
configuration of the command line.
"""

from __future__ import annotations

from .config import RUN_CONFIG_SCHEMA, ensure_run_config, validate_run_config
from .schemas import (
    EDGE_LIST_SCHEMA,
    JOIN_SPEC_SCHEMA,
    NETWORK_SCHEMA,
    TENSOR_SCHEMA,
    ensure_document,
    validate_document,
)

__all__ = [
    "EDGE_LIST_SCHEMA",
    "JOIN_SPEC_SCHEMA",
    "NETWORK_SCHEMA",
    "RUN_CONFIG_SCHEMA",
    "TENSOR_SCHEMA",
    "ensure_document",
    "ensure_run_config",
    "validate_document",
    "validate_run_config",
]
