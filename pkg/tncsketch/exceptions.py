"""
Exception hierarchy for tncsketch.

Every error raised by the package derives from TncError and carries an
error type used by the command line to pick an exit code:

- validation: malformed inputs (shapes, indices, networks, configuration)
- io: files that cannot be read or parsed
- budget: enumeration budgets or dense size guards exceeded
- numerical: floating point results outside the accepted tolerance
"""

from __future__ import annotations

from typing import Any

from .const import ERROR_TYPE_BUDGET, ERROR_TYPE_IO, ERROR_TYPE_NUMERICAL, ERROR_TYPE_VALIDATION


class TncError(Exception):
    """Base class for all tncsketch errors."""

    error_type: str = ERROR_TYPE_VALIDATION
    code: str = "error"

    def __init__(self, message: str, *, code: str | None = None, details: dict[str, Any] | None = None) -> None:
        """
        Initialize the error.

        Args:
            message: Human readable description.
            code: Stable machine readable key, defaults to the class code.
            details: Structured context included in diagnostic JSON.
        """
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code
        self.details: dict[str, Any] = details or {}

    def as_dict(self) -> dict[str, Any]:
        """Return the error as a JSON serializable mapping."""
        return {
            "type": self.error_type,
            "code": self.code,
            "message": self.message,
            "details": self.details,
        }


class ValidationError(TncError):
    """Invalid input data."""

    code = "invalid_input"


class NetworkValidationError(ValidationError):
    """A tensor network violates the contraction model."""

    code = "invalid_network"

    def __init__(self, message: str, diagnostics: list[Any] | None = None) -> None:
        """Initialize with the structured diagnostics of the failed validation."""
        self.diagnostics = list(diagnostics or [])
        super().__init__(
            message,
            details={"diagnostics": [d.as_dict() if hasattr(d, "as_dict") else d for d in self.diagnostics]},
        )


class CyclicNetworkError(ValidationError):
    """An acyclic-only operation received a network with a cycle."""

    code = "cyclic_network"

    def __init__(self, cycle: list[int]) -> None:
        """Initialize with the tensor indices (1-based) along the cycle."""
        self.cycle = cycle
        path = " - ".join(f"X{k}" for k in [*cycle, cycle[0]]) if cycle else "?"
        super().__init__(f"Network contains a cycle: {path}", details={"cycle": cycle})


class PartialNetworkError(ValidationError):
    """A full-contraction operation received a network with free modes."""

    code = "partial_network"


class SchemaMismatchError(ValidationError):
    """A streaming update does not match the sketch state's network schema."""

    code = "schema_mismatch"


class ConfigError(ValidationError):
    """Invalid run or estimator configuration."""

    code = "invalid_config"


class TncIOError(TncError):
    """An input file could not be read or parsed."""

    error_type = ERROR_TYPE_IO
    code = "io_error"


class BudgetExceededError(TncError):
    """An enumeration budget or dense size guard was exceeded."""

    error_type = ERROR_TYPE_BUDGET
    code = "budget_exceeded"


class NumericalError(TncError):
    """A floating point result is outside the accepted tolerance."""

    error_type = ERROR_TYPE_NUMERICAL
    code = "numerical_error"


__all__ = [
    "BudgetExceededError",
    "ConfigError",
    "CyclicNetworkError",
    "NetworkValidationError",
    "NumericalError",
    "PartialNetworkError",
    "SchemaMismatchError",
    "TncError",
    "TncIOError",
    "ValidationError",
]
