"""Shared data types for tncsketch."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
import math
from typing import Any

from .const import (
    DEFAULT_CHEBYSHEV_FAILURE,
    DEFAULT_MEDIAN_CONSTANT,
    DEFAULT_ORACLE_BUDGET,
    DEFAULT_PARALLEL,
    DEFAULT_PARTIAL_BUDGET,
    DEFAULT_SEED,
    ESTIMATION_METHODS,
    METHOD_AUTO,
)
from .exceptions import BudgetExceededError, ConfigError, ValidationError
from .tensor import SparseTensor


@dataclass(frozen=True)
class EstimatorConfig:
    """
    Settings of one estimation run.

    Either (m, repetitions) or (epsilon, delta) drive the sketch size; when
    neither is given the package defaults apply. A requested m is rounded up
    to a power of two.
    """

    method: str = METHOD_AUTO
    m: int | None = None
    repetitions: int | None = None
    epsilon: float | None = None
    delta: float | None = None
    seed: int = DEFAULT_SEED
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    partial_budget: int = DEFAULT_PARTIAL_BUDGET
    parallel: int = DEFAULT_PARALLEL
    root: int | None = None
    median_constant: float = DEFAULT_MEDIAN_CONSTANT
    chebyshev_failure: float = DEFAULT_CHEBYSHEV_FAILURE

    def __post_init__(self) -> None:
        """Reject inconsistent settings."""
        if self.method not in ESTIMATION_METHODS:
            raise ConfigError(f"Unknown method {self.method!r}", code="invalid_method")
        if self.m is not None and self.m < 1:
            raise ConfigError(f"Sketch size must be positive, got {self.m}", code="invalid_m")
        if self.repetitions is not None and self.repetitions < 1:
            raise ConfigError(f"Repetitions must be positive, got {self.repetitions}", code="invalid_reps")
        sized = self.m is not None or self.repetitions is not None
        targeted = self.epsilon is not None or self.delta is not None
        if sized and targeted:
            raise ConfigError("Give either (m, repetitions) or (epsilon, delta), not both", code="invalid_budget")
        if targeted:
            if self.epsilon is None or self.delta is None:
                raise ConfigError("epsilon and delta must be given together", code="invalid_budget")
            if self.epsilon <= 0:
                raise ConfigError(f"epsilon must be positive, got {self.epsilon}", code="invalid_epsilon")
            if not 0 < self.delta < 1:
                raise ConfigError(f"delta must lie in (0, 1), got {self.delta}", code="invalid_delta")
        if self.seed < 0:
            raise ConfigError(f"Seeds must be non-negative, got {self.seed}", code="invalid_seed")
        if min(self.oracle_budget, self.partial_budget, self.parallel) < 1:
            raise ConfigError("Budgets and parallelism must be positive", code="invalid_config")

    @property
    def targeted(self) -> bool:
        """True when (epsilon, delta) drive the sketch size."""
        return self.epsilon is not None


@dataclass(frozen=True)
class OracleBudget:
    """Upper bound on the index space an exact computation may enumerate."""

    limit: int = DEFAULT_ORACLE_BUDGET

    def __post_init__(self) -> None:
        """Check the limit."""
        if self.limit < 1:
            raise ConfigError(f"Oracle budget must be positive, got {self.limit}", code="invalid_budget")

    def check(self, size: int, what: str) -> None:
        """Raise when `size` evaluations of `what` exceed the limit."""
        if size > self.limit:
            raise BudgetExceededError(
                f"{what} needs {size} evaluations, budget is {self.limit}",
                details={"size": size, "limit": self.limit, "what": what},
            )


@dataclass(frozen=True)
class ComponentReport:
    """Estimate of one connected component of a full network."""

    tensors: tuple[int, ...]
    method: str
    contractions: int
    value: float
    m: int | None = None
    repetitions: int = 1
    values: tuple[float, ...] = ()
    seeds: tuple[int, ...] = ()
    root: int | None = None
    max_imag_residue: float = 0.0
    epsilon: float | None = None
    delta: float | None = None

    def as_dict(self) -> dict[str, Any]:
        """Return the component as a JSON serializable mapping."""
        result = asdict(self)
        result["tensors"] = list(self.tensors)
        result["values"] = list(self.values)
        result["seeds"] = list(self.seeds)
        return result


@dataclass(frozen=True)
class EstimateReport:
    """
    Outcome of an estimation run.

    Attributes:
        value: Median estimate (full networks) or the output tensor (partial).
        method: Method that produced the value.
        m: Largest sketch size used, None for exact runs.
        repetitions: Largest repetition count used.
        seed: Master seed.
        values: Per-repetition values of a single-component full run.
        seeds: Per-repetition seeds matching values.
        components: Per-component breakdown.
        norm_product: Product of the Frobenius norms of the normalized tensors.
        max_imag_residue: Largest imaginary residue seen by the general method.
        root: Root tensor of a single-component acyclic run.
        normalization: Rule application counts.
        epsilon: Requested epsilon, if any.
        delta: Requested delta, if any.
        oracle: Exact value for comparison, when computed.
        elapsed: Wall clock seconds.
    """

    value: float | SparseTensor
    method: str
    m: int | None
    repetitions: int
    seed: int
    values: tuple[float, ...] = ()
    seeds: tuple[int, ...] = ()
    components: tuple[ComponentReport, ...] = ()
    norm_product: float = 0.0
    max_imag_residue: float = 0.0
    root: int | None = None
    normalization: dict[str, int] = field(default_factory=dict)
    epsilon: float | None = None
    delta: float | None = None
    oracle: float | SparseTensor | None = None
    elapsed: float = 0.0

    @property
    def is_partial(self) -> bool:
        """True when the value is an output tensor."""
        return isinstance(self.value, SparseTensor)

    def as_dict(self, *, include_values: bool = True, include_timing: bool = True) -> dict[str, Any]:
        """Return the report as a JSON serializable mapping."""
        result: dict[str, Any] = {
            "value": _jsonable(self.value),
            "method": self.method,
            "m": self.m,
            "reps": self.repetitions,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "norm_product": self.norm_product,
            "max_imag_residue": self.max_imag_residue,
            "root": self.root,
            "normalization": dict(self.normalization),
            "components": [c.as_dict() for c in self.components],
        }
        if include_values:
            result["values"] = list(self.values)
            result["seeds"] = list(self.seeds)
        if self.oracle is not None:
            result["oracle"] = _jsonable(self.oracle)
        if include_timing:
            result["elapsed"] = self.elapsed
        return result


@dataclass(frozen=True)
class ExperimentRecord:
    """One row of a variance study."""

    fixture: str
    method: str
    m: int
    q: int
    n: int
    trials: int
    seed: int
    mean: float
    variance: float
    std_error: float
    exact: float
    norm_product_sq: float
    bound_upper: float | None = None
    bound_lower: float | None = None

    @property
    def ratio(self) -> float | None:
        """Empirical variance over the applicable bound."""
        bound = self.bound_upper if self.bound_upper is not None else self.bound_lower
        if not bound:
            return None
        return self.variance / bound

    def as_dict(self) -> dict[str, Any]:
        """Return the record as a JSON serializable mapping."""
        return {**asdict(self), "ratio": self.ratio}


@dataclass(frozen=True)
class Relation:
    """A relation loaded from CSV; every value is kept as its text."""

    name: str
    attrs: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...] = ()

    def column(self, attr: str) -> list[str]:
        """Return the values of one attribute."""
        position = self.attrs.index(attr)
        return [row[position] for row in self.rows]


@dataclass(frozen=True)
class EdgeList:
    """Directed graph on nodes 1..n; duplicate edges are kept once."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        """Check endpoints and drop repeated edges."""
        if self.n < 0:
            raise ValidationError(f"Node count must be non-negative, got {self.n}", code="invalid_graph")
        unique: dict[tuple[int, int], None] = {}
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValidationError(
                    f"Edge ({u}, {v}) outside nodes 1..{self.n}",
                    code="index_out_of_range",
                    details={"edge": [u, v], "n": self.n},
                )
            unique[(int(u), int(v))] = None
        object.__setattr__(self, "edges", tuple(unique))

    @classmethod
    def of(cls, n: int, edges: Sequence[Sequence[int]]) -> EdgeList:
        """Build from any edge sequence."""
        return cls(n, tuple((int(u), int(v)) for u, v in edges))


def _jsonable(value: float | SparseTensor) -> Any:
    if isinstance(value, SparseTensor):
        return {
            "shape": list(value.shape),
            "entries": [[list(index), entry] for index, entry in value.entries.items()],
        }
    value = float(value)
    return value if math.isfinite(value) else str(value)
