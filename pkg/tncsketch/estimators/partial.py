"""
Partial contraction by slicing.

Each output cell Y(r) is the full contraction of the network with its free
modes fixed to r, so any full estimator yields the output tensor entry by
entry.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import replace
import itertools
import math
from typing import NamedTuple

from tncsketch.const import LOGGER, SEED_TAG_PARTIAL
from tncsketch.data import EstimateReport, EstimatorConfig
from tncsketch.exceptions import BudgetExceededError
from tncsketch.hashing import derive_seed
from tncsketch.network import TensorNetwork, fix_free_modes
from tncsketch.tensor import SparseTensor, SparseTensorBuilder, linear_index

type FullEstimator = Callable[[TensorNetwork, EstimatorConfig], EstimateReport]


class PartialEstimate(NamedTuple):
    """Output tensor with the per-cell full estimates behind it."""

    value: SparseTensor
    cells: tuple[EstimateReport, ...]


def estimate_partial(net: TensorNetwork, config: EstimatorConfig, full: FullEstimator) -> PartialEstimate:
    """
    Estimate every output cell of a partial contraction.

    Args:
        net: Normalized network; with no free modes this delegates to `full`.
        config: Run configuration; cell r runs with seed derive_seed(seed, "partial", rank of r).
        full: Full-contraction estimator for the sliced networks.

    Raises:
        BudgetExceededError: The output has more cells than config.partial_budget.
    """
    if net.is_full:
        report = full(net, config)
        return PartialEstimate(SparseTensor.scalar(float(report.value)), (report,))  # type: ignore[arg-type]

    shape = net.output_shape
    cells = math.prod(shape)
    if cells > config.partial_budget:
        raise BudgetExceededError(
            f"Partial contraction has {cells} output cells, budget is {config.partial_budget}",
            code="partial_budget_exceeded",
            details={"cells": cells, "limit": config.partial_budget},
        )
    LOGGER.info("Estimating %d output cells over free modes %s", cells, list(net.free_modes))

    builder = SparseTensorBuilder(shape)
    reports: list[EstimateReport] = []
    for index in itertools.product(*(range(1, n + 1) for n in shape)):
        sliced = fix_free_modes(net, dict(zip(net.free_modes, index, strict=True)))
        cell_seed = derive_seed(config.seed, SEED_TAG_PARTIAL, linear_index(index, shape))
        report = full(sliced, replace(config, seed=cell_seed))
        builder.add(index, float(report.value))  # type: ignore[arg-type]
        reports.append(report)
    return PartialEstimate(builder.build(), tuple(reports))
