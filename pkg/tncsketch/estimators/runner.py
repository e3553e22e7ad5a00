"""
Estimation pipeline.

estimate() validates and normalizes a network, then either estimates every
output cell (partial networks) or splits a full network into connected
components, estimates each with its own method, sketch size and seeds, and
multiplies the component values.
"""

from __future__ import annotations

from dataclasses import replace
import math
import time

from tncsketch.const import (
    LOGGER,
    METHOD_ACYCLIC,
    METHOD_EXACT,
    METHOD_GENERAL,
    SEED_TAG_COMPONENT,
)
from tncsketch.data import ComponentReport, EstimateReport, EstimatorConfig
from tncsketch.exceptions import CyclicNetworkError, PartialNetworkError
from tncsketch.hashing import derive_seed
from tncsketch.network import (
    TensorNetwork,
    build_rooted_tree,
    component_members,
    ensure_valid,
    find_cycle,
    normalize_wlog,
    subnetwork,
)
from tncsketch.oracle import contract_exact

from .acyclic import estimate_acyclic_once
from .boost import run_repetitions
from .config import resolve_budget, split_budget
from .general import estimate_general_detailed
from .partial import estimate_partial


def choose_method(net: TensorNetwork, method: str) -> str:
    """
    Resolve the method of one connected component.

    Raises:
        CyclicNetworkError: acyclic was requested for a cyclic component.
    """
    if method in (METHOD_EXACT, METHOD_GENERAL):
        return method
    cycle = find_cycle(net)
    if cycle is None:
        return METHOD_ACYCLIC
    if method == METHOD_ACYCLIC:
        raise CyclicNetworkError(cycle)
    LOGGER.warning("Network contains a cycle through %s, falling back to the general method", cycle)
    return METHOD_GENERAL


def _estimate_component(
    net: TensorNetwork,
    members: list[int],
    config: EstimatorConfig,
    seed: int,
    epsilon: float | None,
    delta: float | None,
) -> ComponentReport:
    """Estimate one connected component of a normalized full network."""
    sub = subnetwork(net, members)
    t = len(sub.contractions)
    if sub.num_tensors == 1 and sub.tensors[0].order == 0:
        return ComponentReport(tuple(members), METHOD_EXACT, 0, sub.tensors[0].value())

    try:
        method = choose_method(sub, config.method)
    except CyclicNetworkError as err:
        raise CyclicNetworkError([members[k - 1] for k in err.cycle]) from err
    if method == METHOD_EXACT:
        value = contract_exact(sub, config.oracle_budget).value()
        return ComponentReport(tuple(members), METHOD_EXACT, t, value)

    m, repetitions = resolve_budget(config, method, t, epsilon=epsilon, delta=delta)
    residues: dict[int, float] = {}
    root: int | None = None

    if method == METHOD_ACYCLIC:
        local_root = members.index(config.root) + 1 if config.root in members else None
        tree = build_rooted_tree(sub, local_root)
        root = members[tree.root - 1]

        def once(s: int) -> float:
            return estimate_acyclic_once(sub, tree, m, s)

    else:

        def once(s: int) -> float:
            estimate = estimate_general_detailed(sub, m, s)
            residues[s] = estimate.imag_residue
            return estimate.value

    result = run_repetitions(once, repetitions, seed, parallel=config.parallel)
    return ComponentReport(
        tensors=tuple(members),
        method=method,
        contractions=t,
        value=result.value,
        m=m,
        repetitions=repetitions,
        values=result.values,
        seeds=result.seeds,
        root=root,
        max_imag_residue=max(residues.values(), default=0.0),
        epsilon=epsilon,
        delta=delta,
    )


def estimate_full(net: TensorNetwork, config: EstimatorConfig) -> EstimateReport:
    """
    Estimate a normalized full network component by component.

    With k > 1 components, component c runs with seed derive_seed(seed,
    "component", c) and, for (epsilon, delta) targets, with the shares
    eps_c = (1 + eps)^(1/k) - 1 and delta_c = delta / k.
    """
    if not net.is_full:
        raise PartialNetworkError(
            f"Full estimation needs every mode contracted, free modes {list(net.free_modes)}",
            details={"free_modes": list(net.free_modes)},
        )
    members = component_members(net)
    k = len(members)
    epsilon, delta = (None, None)
    if config.targeted:
        assert config.epsilon is not None and config.delta is not None
        epsilon, delta = split_budget(config.epsilon, config.delta, k)
    if k > 1:
        LOGGER.info("Estimating %d connected components independently", k)

    components = tuple(
        _estimate_component(
            net,
            group,
            config,
            derive_seed(config.seed, SEED_TAG_COMPONENT, c) if k > 1 else config.seed,
            epsilon,
            delta,
        )
        for c, group in enumerate(members)
    )
    methods = sorted({c.method for c in components if c.contractions}) or [METHOD_EXACT]
    single = components[0] if k == 1 else None
    sizes = [c.m for c in components if c.m is not None]
    return EstimateReport(
        value=math.prod(c.value for c in components),
        method="+".join(methods),
        m=max(sizes) if sizes else None,
        repetitions=max(c.repetitions for c in components),
        seed=config.seed,
        values=single.values if single else (),
        seeds=single.seeds if single else (),
        components=components,
        norm_product=net.norm_product(),
        max_imag_residue=max(c.max_imag_residue for c in components),
        root=single.root if single else None,
        epsilon=config.epsilon,
        delta=config.delta,
    )


def estimate(net: TensorNetwork, config: EstimatorConfig | None = None) -> EstimateReport:
    """
    Estimate the contraction of any valid network.

    Args:
        net: The network; it is normalized first.
        config: Run configuration (defaults when None).

    Returns:
        The report; its value is a float for full networks and a
        SparseTensor over the free modes otherwise.
    """
    config = config or EstimatorConfig()
    start = time.perf_counter()
    ensure_valid(net)
    LOGGER.info("Estimating %r with method %s", net, config.method)

    if config.method == METHOD_EXACT and not net.is_full:
        value = contract_exact(net, config.oracle_budget)
        return EstimateReport(
            value=value,
            method=METHOD_EXACT,
            m=None,
            repetitions=1,
            seed=config.seed,
            norm_product=net.norm_product(),
            elapsed=time.perf_counter() - start,
        )

    normalized = normalize_wlog(net)
    if normalized.network.is_full:
        report = estimate_full(normalized.network, config)
    else:
        partial = estimate_partial(normalized.network, config, estimate_full)
        cells = partial.cells
        sizes = [c.m for c in cells if c.m is not None]
        report = EstimateReport(
            value=partial.value,
            method=cells[0].method if cells else config.method,
            m=max(sizes) if sizes else None,
            repetitions=max((c.repetitions for c in cells), default=1),
            seed=config.seed,
            norm_product=normalized.network.norm_product(),
            max_imag_residue=max((c.max_imag_residue for c in cells), default=0.0),
            epsilon=config.epsilon,
            delta=config.delta,
        )
    return replace(report, normalization=normalized.rule_counts, elapsed=time.perf_counter() - start)


def estimate_value(net: TensorNetwork, config: EstimatorConfig | None = None) -> float:
    """Return only the value of a full-network estimate."""
    report = estimate(net, config)
    if report.is_partial:
        raise PartialNetworkError("estimate_value needs a full network", details={"free_modes": list(net.free_modes)})
    return float(report.value)  # type: ignore[arg-type]
