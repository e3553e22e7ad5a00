"""
Voluptuous schemas for external file formats.

Each parsed document (network JSON/YAML, join spec, COO tensor text,
edge-list text) is checked against one of these schemas before any
domain object is built from it.
"""

from __future__ import annotations

from typing import Any

import voluptuous as vol

from tncsketch.exceptions import ValidationError

PositiveInt = vol.All(int, vol.Range(min=1))
Number = vol.Any(int, float)

MULTI_INDEX_SCHEMA = vol.Schema([PositiveInt])
ENTRY_SCHEMA = vol.Schema(vol.ExactSequence([MULTI_INDEX_SCHEMA, Number]))

TENSOR_SCHEMA = vol.Schema(
    {
        vol.Required("shape"): [PositiveInt],
        vol.Optional("entries", default=list): [ENTRY_SCHEMA],
    }
)

NETWORK_SCHEMA = vol.Schema(
    {
        vol.Required("tensors"): vol.All([TENSOR_SCHEMA], vol.Length(min=1)),
        vol.Optional("contractions", default=list): [vol.ExactSequence([PositiveInt, PositiveInt])],
    }
)

JOIN_ATTRIBUTE = vol.Match(r"^[^.\s]+\.[^.\s]+$", msg="expected 'Relation.attribute'")

JOIN_SPEC_SCHEMA = vol.Schema(
    {
        vol.Required("relations"): vol.All(
            [
                {
                    vol.Required("name"): vol.All(str, vol.Length(min=1)),
                    vol.Required("file"): vol.All(str, vol.Length(min=1)),
                    vol.Required("attrs"): [vol.All(str, vol.Length(min=1))],
                }
            ],
            vol.Length(min=1),
        ),
        vol.Optional("joins", default=list): [vol.ExactSequence([JOIN_ATTRIBUTE, JOIN_ATTRIBUTE])],
    }
)

EDGE_LIST_SCHEMA = vol.Schema(
    {
        vol.Required("n"): vol.All(int, vol.Range(min=0)),
        vol.Required("edges"): [vol.ExactSequence([PositiveInt, PositiveInt])],
    }
)


def _error_key(err: vol.Invalid) -> str:
    """Map a voluptuous failure to a stable key."""
    if isinstance(err, vol.RequiredFieldInvalid):
        return "missing_field"
    if isinstance(err, vol.ExtraKeysInvalid):
        return "unknown_field"
    if isinstance(err, vol.RangeInvalid):
        return "out_of_range"
    return "schema_invalid"


def validate_document(schema: vol.Schema, data: Any) -> tuple[bool, str | None, Any]:
    """
    Validate a parsed document.

    Args:
        schema: One of the schemas in this module.
        data: Parsed JSON/YAML/text document.

    Returns:
        A tuple of (is_valid, error_key, converted).
        If valid, returns (True, None, converted) with defaults filled in.
        If invalid, returns (False, error_key, None).
    """
    try:
        return True, None, schema(data)
    except vol.Invalid as err:
        return False, _error_key(err), None


def ensure_document(schema: vol.Schema, data: Any, *, source: str = "document") -> Any:
    """
    Validate a parsed document or raise.

    Raises:
        ValidationError: With the voluptuous path of the first failure in details.
    """
    try:
        return schema(data)
    except vol.MultipleInvalid as err:
        first = err.errors[0]
        raise ValidationError(
            f"Invalid {source}: {first.msg} at {'/'.join(str(p) for p in first.path) or '<root>'}",
            code=_error_key(first),
            details={"source": source, "path": [str(p) for p in first.path], "message": first.msg},
        ) from err
    except vol.Invalid as err:
        raise ValidationError(
            f"Invalid {source}: {err.msg}",
            code=_error_key(err),
            details={"source": source, "path": [str(p) for p in err.path], "message": err.msg},
        ) from err
