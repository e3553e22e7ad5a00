"""
Monte-Carlo variance studies.

variance_experiment runs one single-shot estimator over many derived seeds
and compares the empirical variance with the applicable bound. The fixture
builders produce the networks of the moment studies (unit Frobenius norm
random chains) and of the lower-bound study (all-ones chains).
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
import math

import numpy as np

from tncsketch.const import (
    DEFAULT_PARALLEL,
    LOGGER,
    METHOD_ACYCLIC,
    METHOD_BASELINE,
    METHOD_EXACT,
    METHOD_GENERAL,
    SEED_TAG_TRIAL,
)
from tncsketch.data import ExperimentRecord
from tncsketch.exceptions import ValidationError
from tncsketch.hashing import derive_seed
from tncsketch.network import TensorNetwork, build_rooted_tree, ensure_normalized, is_acyclic
from tncsketch.oracle import contract_exact
from tncsketch.tensor import SparseTensor, frobenius_norm

from .acyclic import estimate_acyclic_once
from .baseline import baseline_chain_once, chain_network, check_chain
from .config import acyclic_variance_bound, baseline_variance_lower_bound, general_variance_bound
from .general import estimate_general_once

EXPERIMENT_METHODS = (METHOD_EXACT, METHOD_GENERAL, METHOD_ACYCLIC, METHOD_BASELINE)


def unit_norm_chain(q: int, n: int, seed: int) -> tuple[SparseTensor, ...]:
    """Random Gaussian chain with q contractions, every tensor scaled to unit Frobenius norm."""
    if q < 1 or n < 1:
        raise ValidationError(f"Invalid chain q={q}, n={n}", code="not_a_chain")
    rng = np.random.default_rng(seed)
    shapes = [(n,), *((n, n),) * (q - 1), (n,)]
    tensors = []
    for shape in shapes:
        dense = rng.standard_normal(shape)
        tensors.append(SparseTensor.from_dense(dense / np.linalg.norm(dense)))
    return tuple(tensors)


def sample_estimates(
    once: Callable[[int], float], trials: int, seed: int, *, parallel: int = DEFAULT_PARALLEL
) -> np.ndarray:
    """Run a single-shot estimator with seeds derive_seed(seed, "trial", 0..trials-1)."""
    seeds = [derive_seed(seed, SEED_TAG_TRIAL, r) for r in range(trials)]
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            return np.fromiter(pool.map(once, seeds), dtype=np.float64, count=trials)
    return np.fromiter((once(s) for s in seeds), dtype=np.float64, count=trials)


def variance_experiment(
    target: TensorNetwork | Sequence[SparseTensor],
    method: str,
    m: int,
    trials: int,
    seed: int,
    *,
    fixture: str = "custom",
    n: int = 0,
    parallel: int = DEFAULT_PARALLEL,
) -> ExperimentRecord:
    """
    Measure the mean and variance of one estimator.

    Args:
        target: Normalized full network, or chain tensors for the baseline.
        method: exact, general, acyclic or baseline.
        m: Sketch size.
        trials: Number of seeds, at least 2.
        seed: Master seed of the trials.
        fixture: Name written into the record.
        n: Mode size written into the record.
        parallel: Worker threads.

    Returns:
        The record with the upper bound (general, acyclic) or lower bound
        (baseline) on the variance.
    """
    if trials < 2:
        raise ValidationError(f"A variance needs at least 2 trials, got {trials}", code="invalid_trials")
    if method not in EXPERIMENT_METHODS:
        raise ValidationError(f"Unknown experiment method {method!r}", code="invalid_method")

    chain: tuple[SparseTensor, ...] | None = None
    if isinstance(target, TensorNetwork):
        net = target
    else:
        chain = tuple(target)
        net = chain_network(chain)
    ensure_normalized(net)
    t = len(net.contractions)
    norm_sq = math.prod(frobenius_norm(x) ** 2 for x in net.tensors)
    exact = contract_exact(net).value()

    bound_upper: float | None = None
    bound_lower: float | None = None
    if method == METHOD_EXACT:
        samples = np.full(trials, exact)
        bound_upper = 0.0
    elif method == METHOD_GENERAL:
        samples = sample_estimates(lambda s: estimate_general_once(net, m, s), trials, seed, parallel=parallel)
        bound_upper = general_variance_bound(t, m, norm_sq)
    elif method == METHOD_ACYCLIC:
        if not is_acyclic(net):
            raise ValidationError("The acyclic method needs an acyclic network", code="cyclic_network")
        tree = build_rooted_tree(net)
        samples = sample_estimates(lambda s: estimate_acyclic_once(net, tree, m, s), trials, seed, parallel=parallel)
        bound_upper = acyclic_variance_bound(t, m, norm_sq)
    else:
        if chain is None:
            raise ValidationError("The baseline method needs chain tensors", code="not_a_chain")
        check_chain(chain)
        samples = sample_estimates(lambda s: baseline_chain_once(chain, m, s), trials, seed, parallel=parallel)
        bound_lower = baseline_variance_lower_bound(t, m, norm_sq)

    variance = float(np.var(samples, ddof=1))
    record = ExperimentRecord(
        fixture=fixture,
        method=method,
        m=m,
        q=t,
        n=n,
        trials=trials,
        seed=seed,
        mean=float(np.mean(samples)),
        variance=variance,
        std_error=math.sqrt(variance / trials),
        exact=exact,
        norm_product_sq=norm_sq,
        bound_upper=bound_upper,
        bound_lower=bound_lower,
    )
    LOGGER.debug("Experiment %s/%s m=%d: variance %.6g, ratio %s", fixture, method, m, variance, record.ratio)
    return record
