"""Run configuration validation for the command line."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

import voluptuous as vol

from tncsketch.const import (
    DEFAULT_ORACLE_BUDGET,
    DEFAULT_PARALLEL,
    DEFAULT_PARTIAL_BUDGET,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    ESTIMATION_METHODS,
    EXPERIMENT_FIXTURES,
    METHOD_AUTO,
)
from tncsketch.exceptions import ConfigError

CONF_COMMAND = "command"
CONF_INPUTS = "inputs"
CONF_METHOD = "method"
CONF_M = "m"
CONF_REPS = "reps"
CONF_EPSILON = "epsilon"
CONF_DELTA = "delta"
CONF_SEED = "seed"
CONF_TRIALS = "trials"
CONF_WITH_ORACLE = "with_oracle"
CONF_BUDGET = "budget"
CONF_PARTIAL_BUDGET = "partial_budget"
CONF_PARALLEL = "parallel"
CONF_OUTPUT = "output"
CONF_FIXTURE = "fixture"
CONF_ORDER = "q"
CONF_DIMENSION = "n"
CONF_ROOT = "root"
CONF_DIAGNOSTICS = "diagnostics"
CONF_STREAM = "stream"


def _sketch_budget(config: dict[str, Any]) -> dict[str, Any]:
    """Enforce that (m, reps) and (epsilon, delta) are not mixed."""
    sized = config.get(CONF_M) is not None or config.get(CONF_REPS) is not None
    targeted = config.get(CONF_EPSILON) is not None or config.get(CONF_DELTA) is not None
    if sized and targeted:
        raise vol.Invalid("give either (m, reps) or (epsilon, delta), not both", path=[CONF_EPSILON])
    if targeted and (config.get(CONF_EPSILON) is None or config.get(CONF_DELTA) is None):
        raise vol.Invalid("epsilon and delta must be given together", path=[CONF_DELTA])
    return config


RUN_CONFIG_SCHEMA = vol.Schema(
    vol.All(
        {
            vol.Optional(CONF_COMMAND): vol.In(["contract", "joinsize", "triangles", "experiment"]),
            vol.Optional(CONF_INPUTS, default=list): [str],
            vol.Optional(CONF_METHOD, default=METHOD_AUTO): vol.In(ESTIMATION_METHODS),
            vol.Optional(CONF_M): vol.Any(None, vol.All(int, vol.Range(min=1))),
            vol.Optional(CONF_REPS): vol.Any(None, vol.All(int, vol.Range(min=1))),
            vol.Optional(CONF_EPSILON): vol.Any(None, vol.All(vol.Coerce(float), vol.Range(min=0, min_included=False))),
            vol.Optional(CONF_DELTA): vol.Any(
                None, vol.All(vol.Coerce(float), vol.Range(min=0, max=1, min_included=False, max_included=False))
            ),
            vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.All(vol.Coerce(int), vol.Range(min=0)),
            vol.Optional(CONF_TRIALS, default=DEFAULT_TRIALS): vol.All(int, vol.Range(min=2)),
            vol.Optional(CONF_WITH_ORACLE, default=False): bool,
            vol.Optional(CONF_BUDGET, default=DEFAULT_ORACLE_BUDGET): vol.All(int, vol.Range(min=1)),
            vol.Optional(CONF_PARTIAL_BUDGET, default=DEFAULT_PARTIAL_BUDGET): vol.All(int, vol.Range(min=1)),
            vol.Optional(CONF_PARALLEL, default=DEFAULT_PARALLEL): vol.All(int, vol.Range(min=1)),
            vol.Optional(CONF_OUTPUT): vol.Any(None, str),
            vol.Optional(CONF_FIXTURE): vol.Any(None, vol.In(EXPERIMENT_FIXTURES)),
            vol.Optional(CONF_ORDER): vol.Any(None, vol.All(int, vol.Range(min=1))),
            vol.Optional(CONF_DIMENSION): vol.Any(None, vol.All(int, vol.Range(min=1))),
            vol.Optional(CONF_ROOT): vol.Any(None, vol.All(int, vol.Range(min=1))),
            vol.Optional(CONF_DIAGNOSTICS, default=False): bool,
            vol.Optional(CONF_STREAM, default=False): bool,
        },
        _sketch_budget,
    )
)


def validate_run_config(config: Mapping[str, Any]) -> tuple[bool, str | None, dict[str, Any] | None]:
    """
    Validate a merged run configuration.

    Args:
        config: Defaults, YAML file, environment and flags merged into one mapping.

    Returns:
        A tuple of (is_valid, error_key, converted).
        If valid, returns (True, None, converted) with defaults filled in.
        If invalid, returns (False, error_key, None).
    """
    try:
        return True, None, RUN_CONFIG_SCHEMA(dict(config))
    except vol.Invalid as err:
        return False, _config_error_key(err), None


def _config_error_key(err: vol.Invalid) -> str:
    """Return the key of the first failing field."""
    errors = err.errors if isinstance(err, vol.MultipleInvalid) else [err]
    path = errors[0].path
    return f"invalid_{path[0]}" if path else "invalid_config"


def ensure_run_config(config: Mapping[str, Any]) -> dict[str, Any]:
    """
    Validate a merged run configuration or raise.

    Raises:
        ConfigError: With the failing field and message in details.
    """
    try:
        return RUN_CONFIG_SCHEMA(dict(config))
    except vol.Invalid as err:
        first = err.errors[0] if isinstance(err, vol.MultipleInvalid) else err
        raise ConfigError(
            f"Invalid configuration: {first.msg}" + (f" ({first.path[0]})" if first.path else ""),
            code=_config_error_key(err),
            details={"path": [str(p) for p in first.path], "message": first.msg},
        ) from err
