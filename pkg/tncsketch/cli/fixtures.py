"""
Named experiment fixtures.

lowerbound-chain: all-ones chain, cross-correlation baseline against the
    acyclic estimator (q contractions, default q=4, n=2, m=4).
moments-general: unit-norm random chain, general estimator (default t=1, n=8, m=64).
moments-acyclic: unit-norm random chain, acyclic estimator (default t=1, n=8, m=64).
"""

from __future__ import annotations

from tncsketch.const import (
    DEFAULT_PARALLEL,
    FIXTURE_LOWERBOUND_CHAIN,
    FIXTURE_MOMENTS_ACYCLIC,
    FIXTURE_MOMENTS_GENERAL,
    LOGGER,
    METHOD_ACYCLIC,
    METHOD_BASELINE,
    METHOD_GENERAL,
    SEED_TAG_CHAIN,
)
from tncsketch.data import ExperimentRecord
from tncsketch.estimators import all_ones_chain, chain_network, unit_norm_chain, variance_experiment
from tncsketch.exceptions import ConfigError
from tncsketch.hashing import derive_seed

FIXTURE_DEFAULTS: dict[str, dict[str, int]] = {
    FIXTURE_LOWERBOUND_CHAIN: {"q": 4, "n": 2, "m": 4},
    FIXTURE_MOMENTS_GENERAL: {"q": 1, "n": 8, "m": 64},
    FIXTURE_MOMENTS_ACYCLIC: {"q": 1, "n": 8, "m": 64},
}


def run_fixture(
    fixture: str,
    *,
    trials: int,
    seed: int,
    q: int | None = None,
    n: int | None = None,
    m: int | None = None,
    parallel: int = DEFAULT_PARALLEL,
) -> list[ExperimentRecord]:
    """Run one fixture and return its records, one per (method, m, q) configuration."""
    if fixture not in FIXTURE_DEFAULTS:
        raise ConfigError(f"Unknown fixture {fixture!r}", code="invalid_fixture")
    defaults = FIXTURE_DEFAULTS[fixture]
    q = q or defaults["q"]
    n = n or defaults["n"]
    m = m or defaults["m"]
    LOGGER.info("Running %s with q=%d, n=%d, m=%d, %d trials", fixture, q, n, m, trials)

    if fixture == FIXTURE_LOWERBOUND_CHAIN:
        chain = all_ones_chain(q, n)
        return [
            variance_experiment(chain, METHOD_BASELINE, m, trials, seed, fixture=fixture, n=n, parallel=parallel),
            variance_experiment(
                chain_network(chain), METHOD_ACYCLIC, m, trials, seed, fixture=fixture, n=n, parallel=parallel
            ),
        ]

    net = chain_network(unit_norm_chain(q, n, derive_seed(seed, SEED_TAG_CHAIN)))
    method = METHOD_GENERAL if fixture == FIXTURE_MOMENTS_GENERAL else METHOD_ACYCLIC
    return [variance_experiment(net, method, m, trials, seed, fixture=fixture, n=n, parallel=parallel)]
