"""
Command line interface.

Usage:
    tncsketch contract NETWORK [options]
    tncsketch joinsize JOIN_SPEC [options]
    tncsketch triangles EDGE_LIST [options]
    tncsketch experiment FIXTURE [options]

Settings merge, lowest precedence first: built-in defaults, the YAML file of
--config, the TNC_SEED environment variable, then explicit flags.
"""

from __future__ import annotations

import argparse
from collections.abc import Mapping, Sequence
import json
import logging
import os
from pathlib import Path
import sys
from typing import Any

import colorlog
import yaml

from tncsketch.const import (
    ENV_SEED,
    ESTIMATION_METHODS,
    EXIT_CODES,
    EXIT_IO,
    EXPERIMENT_FIXTURES,
    LOGGER,
)
from tncsketch.exceptions import ConfigError, TncError, TncIOError
from tncsketch.validators.config import (
    CONF_BUDGET,
    CONF_COMMAND,
    CONF_DELTA,
    CONF_DIAGNOSTICS,
    CONF_DIMENSION,
    CONF_EPSILON,
    CONF_FIXTURE,
    CONF_INPUTS,
    CONF_M,
    CONF_METHOD,
    CONF_ORDER,
    CONF_OUTPUT,
    CONF_PARALLEL,
    CONF_PARTIAL_BUDGET,
    CONF_REPS,
    CONF_ROOT,
    CONF_SEED,
    CONF_STREAM,
    CONF_TRIALS,
    CONF_WITH_ORACLE,
    ensure_run_config,
)

from .commands import COMMANDS

LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"

# argparse destination -> run configuration key
_FLAG_KEYS = {
    "method": CONF_METHOD,
    "m": CONF_M,
    "reps": CONF_REPS,
    "epsilon": CONF_EPSILON,
    "delta": CONF_DELTA,
    "seed": CONF_SEED,
    "trials": CONF_TRIALS,
    "with_oracle": CONF_WITH_ORACLE,
    "budget": CONF_BUDGET,
    "partial_budget": CONF_PARTIAL_BUDGET,
    "parallel": CONF_PARALLEL,
    "output": CONF_OUTPUT,
    "root": CONF_ROOT,
    "diagnostics": CONF_DIAGNOSTICS,
    "stream": CONF_STREAM,
    "q": CONF_ORDER,
    "n": CONF_DIMENSION,
}


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    """Options shared by every subcommand; unset flags stay None so they do not override."""
    budget = parser.add_argument_group("sketch budget")
    budget.add_argument("--method", choices=ESTIMATION_METHODS, default=None, help="Estimation method")
    budget.add_argument("--m", type=int, default=None, help="Sketch size, rounded up to a power of two")
    budget.add_argument("--reps", type=int, default=None, help="Repetitions for the median")
    budget.add_argument("--epsilon", type=float, default=None, help="Target relative error")
    budget.add_argument("--delta", type=float, default=None, help="Target failure probability")

    run = parser.add_argument_group("run")
    run.add_argument("--seed", type=int, default=None, help="Master seed")
    run.add_argument("--trials", type=int, default=None, help="Trials per experiment configuration")
    run.add_argument("--with-oracle", action="store_true", default=None, help="Also compute the exact value")
    run.add_argument("--budget", type=int, default=None, help="Enumeration budget of exact computations")
    run.add_argument("--partial-budget", type=int, default=None, help="Output cells a partial run may estimate")
    run.add_argument("--parallel", type=int, default=None, help="Worker threads for repetitions and trials")
    run.add_argument("--root", type=int, default=None, help="Root tensor of the acyclic estimator")
    run.add_argument("--diagnostics", action="store_true", default=None, help="Include network diagnostics")
    run.add_argument("--stream", action="store_true", default=None, help="Build sketches by streaming updates")
    run.add_argument("--output", "-o", default=None, help="Write the report to a file instead of stdout")
    run.add_argument("--config", type=Path, default=None, help="YAML file with run settings")

    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(prog="tncsketch", description="Approximate tensor network contraction")
    subparsers = parser.add_subparsers(dest="command", required=True)

    contract = subparsers.add_parser("contract", help="Contract a network file")
    contract.add_argument("inputs", nargs=1, metavar="NETWORK", help="Network JSON or YAML file")
    _add_common_options(contract)

    joinsize = subparsers.add_parser("joinsize", help="Estimate an equi-join size")
    joinsize.add_argument("inputs", nargs=1, metavar="JOIN_SPEC", help="Join spec JSON or YAML file")
    _add_common_options(joinsize)

    triangles = subparsers.add_parser("triangles", help="Estimate the triangle count of a graph")
    triangles.add_argument("inputs", nargs=1, metavar="EDGE_LIST", help="Edge-list text file")
    _add_common_options(triangles)

    experiment = subparsers.add_parser("experiment", help="Run a variance study")
    experiment.add_argument("fixture", choices=EXPERIMENT_FIXTURES, help="Fixture name")
    experiment.add_argument("--q", type=int, default=None, help="Number of contractions of the chain")
    experiment.add_argument("--n", type=int, default=None, help="Mode dimension of the chain")
    _add_common_options(experiment)
    return parser


def setup_logging(*, verbose: bool = False, quiet: bool = False) -> None:
    """Attach a colored stderr handler to the package logger."""
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    LOGGER.handlers.clear()
    LOGGER.addHandler(handler)
    LOGGER.propagate = False
    LOGGER.setLevel(logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO)


def load_config_file(path: Path) -> dict[str, Any]:
    """
    Read a YAML run configuration.

    Raises:
        TncIOError: The file is unreadable or not YAML.
        ConfigError: The document is not a mapping.
    """
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as err:
        raise TncIOError(f"Cannot read {path}: {err.strerror}", details={"path": str(path)}) from err
    except yaml.YAMLError as err:
        raise TncIOError(f"Cannot parse {path}: {err}", code="parse_error", details={"path": str(path)}) from err
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping of settings", code="invalid_config")
    return {str(key).replace("-", "_"): value for key, value in data.items()}


def merge_config(args: argparse.Namespace, environ: Mapping[str, str] | None = None) -> dict[str, Any]:
    """
    Merge the YAML file, the environment and the flags, then validate.

    Returns:
        The validated run configuration with defaults filled in.
    """
    environ = os.environ if environ is None else environ
    merged: dict[str, Any] = {}
    if args.config is not None:
        merged.update(load_config_file(args.config))
    if ENV_SEED in environ:
        try:
            merged[CONF_SEED] = int(environ[ENV_SEED])
        except ValueError as err:
            raise ConfigError(f"{ENV_SEED} must be an integer", code="invalid_seed") from err
    for dest, key in _FLAG_KEYS.items():
        value = getattr(args, dest, None)
        if value is not None:
            merged[key] = value
    merged[CONF_COMMAND] = args.command
    merged[CONF_INPUTS] = list(getattr(args, "inputs", None) or [])
    if args.command == "experiment":
        merged[CONF_FIXTURE] = args.fixture
    return ensure_run_config(merged)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the process exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(verbose=args.verbose, quiet=args.quiet)
    try:
        config = merge_config(args)
        LOGGER.debug("Run configuration: %s", config)
        return COMMANDS[config[CONF_COMMAND]](config)
    except TncError as err:
        LOGGER.error("%s", err.message)  # noqa: TRY400
        sys.stdout.write(json.dumps({"error": err.as_dict()}, indent=2) + "\n")
        return EXIT_CODES[err.error_type]
    except BrokenPipeError:
        return EXIT_IO
