"""Custom exceptions for arms-race."""


class ArmsRaceError(Exception):
    """Base exception for arms-race."""


class InvalidParameterError(ArmsRaceError, ValueError):
    """Raised when a model parameter violates its invariant."""


class DomainError(ArmsRaceError):
    """Raised when a derivative is requested outside the log domain.

    Attributes:
        fail_branch_derivative: Slope of the fail branch (-P) at the same point.
    """

    def __init__(self, message: str, fail_branch_derivative: float) -> None:
        super().__init__(message)
        self.fail_branch_derivative = fail_branch_derivative


class EmptyPopulationError(ArmsRaceError):
    """Raised when a mean-plus-k-sigma threshold is formed over no scores."""


class DegeneratePoolError(ArmsRaceError):
    """Raised when a diversion leaves fewer than two competing families."""


class ConfigError(ArmsRaceError):
    """Raised when a run configuration cannot be read or validated."""
