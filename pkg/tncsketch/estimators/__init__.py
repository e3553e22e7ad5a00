"""
Estimator package.

Single-shot estimators (general, acyclic, baseline chain), median boosting,
partial contraction, turnstile sketch state, the estimation pipeline and
the variance experiments.
"""

from __future__ import annotations

from .acyclic import estimate_acyclic_once, sketched_matvec, tree_sketches
from .baseline import all_ones_chain, baseline_chain_once, chain_network, check_chain
from .boost import BoostResult, lower_median, median_boost, repetition_seeds, run_repetitions
from .config import (
    SketchBudget,
    acyclic_variance_bound,
    baseline_variance_lower_bound,
    derive_repetitions,
    derive_sketch_size,
    general_variance_bound,
    resolve_budget,
    split_budget,
)
from .experiment import EXPERIMENT_METHODS, sample_estimates, unit_norm_chain, variance_experiment
from .general import (
    GeneralSketchState,
    SketchEstimate,
    contraction_sketches,
    estimate_from_state,
    estimate_general_detailed,
    estimate_general_once,
    turnstile_update,
)
from .partial import PartialEstimate, estimate_partial
from .runner import choose_method, estimate, estimate_full, estimate_value

__all__ = [
    "EXPERIMENT_METHODS",
    "BoostResult",
    "GeneralSketchState",
    "PartialEstimate",
    "SketchBudget",
    "SketchEstimate",
    "acyclic_variance_bound",
    "all_ones_chain",
    "baseline_chain_once",
    "baseline_variance_lower_bound",
    "chain_network",
    "check_chain",
    "choose_method",
    "contraction_sketches",
    "derive_repetitions",
    "derive_sketch_size",
    "estimate",
    "estimate_acyclic_once",
    "estimate_from_state",
    "estimate_full",
    "estimate_general_detailed",
    "estimate_general_once",
    "estimate_partial",
    "estimate_value",
    "general_variance_bound",
    "lower_median",
    "median_boost",
    "repetition_seeds",
    "resolve_budget",
    "run_repetitions",
    "sample_estimates",
    "sketched_matvec",
    "split_budget",
    "tree_sketches",
    "turnstile_update",
    "unit_norm_chain",
    "variance_experiment",
]
