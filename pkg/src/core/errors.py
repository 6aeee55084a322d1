"""
Error taxonomy shared by the numerical core.

The CLI maps these onto exit codes: invalid arguments are usage errors,
everything else is a numerical failure.
"""

from typing import Any


class QCLabError(Exception):
    """Base class for all laboratory errors."""
    pass


class InvalidArgumentError(QCLabError, ValueError):
    """Raised when an argument violates an operation's precondition."""
    pass


class DomainError(QCLabError, ValueError):
    """Raised when data leaves the region an operation can resolve."""
    pass


class SolverFailureError(QCLabError):
    """Raised when the Neumann iteration does not converge."""

    def __init__(self, message: str, report: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.report = report or {}


class SingularNodeError(QCLabError):
    """Raised when w_z vanishes at grid nodes."""

    def __init__(self, message: str, nodes: list[tuple[int, int]]) -> None:
        super().__init__(message)
        self.nodes = nodes


class InverseFailureError(QCLabError):
    """Raised when Newton inversion of a map does not converge."""
    pass


class BarycenterFailureError(QCLabError):
    """Raised when the conformal barycenter Newton iteration diverges."""
    pass


class ExtensionRuleError(QCLabError):
    """Raised when a reflected solve fails to preserve the unit circle."""
    pass


class DegenerateTripleError(QCLabError):
    """Raised when normalizing points coincide at some parameter."""
    pass


class ConstructionFailureError(QCLabError):
    """Raised when a quasiconformal extension cannot be assembled."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics or {}
