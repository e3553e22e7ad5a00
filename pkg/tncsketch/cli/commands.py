"""Subcommand handlers; each takes a validated run configuration."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import replace
import json
import math
from pathlib import Path
import sys
import time
from typing import Any

from tncsketch.apps import (
    load_edge_list,
    load_join_query,
    relations_to_network,
    stream_relations,
    stream_triangles,
    triangles_to_network,
)
from tncsketch.const import EXIT_OK, LOGGER, METHOD_AUTO, METHOD_EXACT, METHOD_GENERAL
from tncsketch.data import EstimateReport, EstimatorConfig
from tncsketch.diagnostics import network_diagnostics
from tncsketch.estimators import estimate, estimate_from_state, resolve_budget, run_repetitions
from tncsketch.exceptions import BudgetExceededError, ConfigError, PartialNetworkError, TncIOError
from tncsketch.network import TensorNetwork, load_network, normalize_wlog
from tncsketch.oracle import contract_exact, join_size_nested_loop, triangle_count_exact
from tncsketch.validators.config import (
    CONF_BUDGET,
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
)

from .fixtures import run_fixture

type Command = Callable[[Mapping[str, Any]], int]
type StreamState = Callable[[int, int], Any]


def estimator_config(config: Mapping[str, Any]) -> EstimatorConfig:
    """Build the estimator settings of a validated run configuration."""
    return EstimatorConfig(
        method=config[CONF_METHOD],
        m=config.get(CONF_M),
        repetitions=config.get(CONF_REPS),
        epsilon=config.get(CONF_EPSILON),
        delta=config.get(CONF_DELTA),
        seed=config[CONF_SEED],
        oracle_budget=config[CONF_BUDGET],
        partial_budget=config[CONF_PARTIAL_BUDGET],
        parallel=config[CONF_PARALLEL],
        root=config.get(CONF_ROOT),
    )


def _single_input(config: Mapping[str, Any]) -> Path:
    inputs = config[CONF_INPUTS]
    if len(inputs) != 1:
        raise ConfigError(f"Expected one input file, got {len(inputs)}", code="invalid_inputs")
    return Path(inputs[0])


def write_output(config: Mapping[str, Any], lines: Iterable[str]) -> None:
    """Write output lines to the configured file or stdout."""
    text = "".join(f"{line}\n" for line in lines)
    output = config.get(CONF_OUTPUT)
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as err:
        raise TncIOError(f"Cannot write {output}: {err.strerror}", details={"path": output}) from err
    LOGGER.info("Wrote %s", output)


def write_report(config: Mapping[str, Any], report: Mapping[str, Any]) -> None:
    """Write one JSON document."""
    write_output(config, [json.dumps(report, indent=2, sort_keys=True)])


def _within_budget(size: int, limit: int, what: str, compute: Callable[[], Any]) -> Any:
    if size > limit:
        raise BudgetExceededError(
            f"{what} needs {size} evaluations, budget is {limit}",
            details={"size": size, "limit": limit, "what": what},
        )
    return compute()


def _oracle(config: Mapping[str, Any], what: str, compute: Callable[[], Any]) -> Any:
    """Run an exact computation when requested; a blown budget only skips it."""
    if not config[CONF_WITH_ORACLE]:
        return None
    try:
        return compute()
    except BudgetExceededError as err:
        LOGGER.warning("Skipping %s oracle: %s", what, err.message)
        return None


def _streamed_report(
    net: TensorNetwork, settings: EstimatorConfig, state_for: StreamState, start: float
) -> EstimateReport:
    """
    Median-boosted general estimate over sketch states built by streaming.

    Args:
        net: The batch network, used for the budget and the norm product.
        settings: Estimator settings; the method must be general or auto.
        state_for: Builds the sketch state of one repetition from (m, seed).
        start: perf_counter value at the start of the run.
    """
    if settings.method not in (METHOD_GENERAL, METHOD_AUTO):
        raise ConfigError("Streaming supports the general method only", code="invalid_method")
    normalized = normalize_wlog(net)
    if not normalized.network.is_full:
        raise PartialNetworkError("Streaming needs a full network")
    m, repetitions = resolve_budget(settings, METHOD_GENERAL, len(normalized.network.contractions))
    residues: dict[int, float] = {}

    def once(seed: int) -> float:
        estimate_ = estimate_from_state(state_for(m, seed))
        residues[seed] = estimate_.imag_residue
        return estimate_.value

    result = run_repetitions(once, repetitions, settings.seed, parallel=settings.parallel)
    return EstimateReport(
        value=result.value,
        method=METHOD_GENERAL,
        m=m,
        repetitions=repetitions,
        seed=settings.seed,
        values=result.values,
        seeds=result.seeds,
        norm_product=normalized.network.norm_product(),
        max_imag_residue=max(residues.values(), default=0.0),
        normalization=normalized.rule_counts,
        epsilon=settings.epsilon,
        delta=settings.delta,
        elapsed=time.perf_counter() - start,
    )


def cmd_contract(config: Mapping[str, Any]) -> int:
    """Estimate (or contract exactly) the network in a JSON/YAML file."""
    net = load_network(_single_input(config))
    settings = estimator_config(config)
    report = estimate(net, settings)
    if report.method != METHOD_EXACT:
        oracle = _oracle(config, "contraction", lambda: contract_exact(net, settings.oracle_budget))
        if oracle is not None and not oracle.order:
            oracle = oracle.value()
        if oracle is not None:
            report = replace(report, oracle=oracle)
    result = report.as_dict()
    if config[CONF_DIAGNOSTICS]:
        result["diagnostics"] = network_diagnostics(net)
    write_report(config, result)
    return EXIT_OK


def cmd_joinsize(config: Mapping[str, Any]) -> int:
    """Estimate the size of the equi-join described by a join spec file."""
    start = time.perf_counter()
    relations, joins = load_join_query(_single_input(config))
    net, _schema = relations_to_network(relations, joins)
    settings = estimator_config(config)
    if config[CONF_STREAM]:
        report = _streamed_report(net, settings, lambda m, seed: stream_relations(relations, joins, m, seed), start)
    else:
        report = estimate(net, settings)
    result = report.as_dict()

    tuples = math.prod(len(r.rows) for r in relations)

    def nested_loop() -> int:
        return _within_budget(
            tuples, settings.oracle_budget, "nested-loop join", lambda: join_size_nested_loop(relations, joins)
        )

    nested = _oracle(config, "nested-loop", nested_loop)
    exact = _oracle(config, "contraction", lambda: contract_exact(net, settings.oracle_budget).value())
    if nested is not None or exact is not None:
        result["oracle"] = exact if exact is not None else nested
        result["oracle_nested_loop"] = nested
        result["oracle_contraction"] = exact
        if nested is not None and exact is not None and nested != exact:
            LOGGER.warning("Join oracles disagree: nested loop %s, contraction %s", nested, exact)
    if config[CONF_DIAGNOSTICS]:
        result["diagnostics"] = network_diagnostics(net)
    write_report(config, result)
    return EXIT_OK


def cmd_triangles(config: Mapping[str, Any]) -> int:
    """Estimate the number of directed triangles tr(A^3) of an edge list."""
    start = time.perf_counter()
    edges = load_edge_list(_single_input(config))
    net = triangles_to_network(edges)
    settings = estimator_config(config)
    if config[CONF_STREAM]:
        report = _streamed_report(net, settings, lambda m, seed: stream_triangles(edges, m, seed), start)
    else:
        report = estimate(net, settings)
    result = report.as_dict()

    n = max(1, edges.n)

    def dense_count() -> float:
        return _within_budget(n * n, settings.oracle_budget, "dense adjacency", lambda: triangle_count_exact(edges))

    oracle = _oracle(config, "triangle", dense_count)
    if oracle is not None:
        result["oracle"] = oracle
    if config[CONF_DIAGNOSTICS]:
        result["diagnostics"] = network_diagnostics(net)
    write_report(config, result)
    return EXIT_OK


def cmd_experiment(config: Mapping[str, Any]) -> int:
    """Run a named variance fixture and emit one JSON line per configuration."""
    fixture = config.get(CONF_FIXTURE)
    if fixture is None:
        raise ConfigError("The experiment command needs a fixture", code="invalid_fixture")
    records = run_fixture(
        fixture,
        trials=config[CONF_TRIALS],
        seed=config[CONF_SEED],
        q=config.get(CONF_ORDER),
        n=config.get(CONF_DIMENSION),
        m=config.get(CONF_M),
        parallel=config[CONF_PARALLEL],
    )
    write_output(config, (json.dumps(record.as_dict(), sort_keys=True) for record in records))
    return EXIT_OK


COMMANDS: dict[str, Command] = {
    "contract": cmd_contract,
    "joinsize": cmd_joinsize,
    "triangles": cmd_triangles,
    "experiment": cmd_experiment,
}
