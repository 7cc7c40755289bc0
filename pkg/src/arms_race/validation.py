"""Parameter validation utilities."""

import math

from arms_race.exceptions import InvalidParameterError

DEFAULT_T_HARD_CAP = 24.0


def validate_finite(value: float, name: str) -> None:
    """Validate that a value is a finite real number.

    Raises:
        InvalidParameterError: If the value is NaN or infinite.
    """
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value}")


def validate_positive(value: float, name: str) -> None:
    """Validate that a value is finite and strictly positive.

    Raises:
        InvalidParameterError: If the value is not finite or not > 0.
    """
    validate_finite(value, name)
    if value <= 0:
        raise InvalidParameterError(f"{name} must be > 0, got {value}")


def validate_effort(t: float, t_hard_cap: float = DEFAULT_T_HARD_CAP) -> None:
    """Validate a study time against [0, t_hard_cap].

    Raises:
        InvalidParameterError: If t is negative, non-finite, or above the cap.
    """
    validate_finite(t, "t")
    if t < 0:
        raise InvalidParameterError(f"study time must be >= 0, got {t}")
    if t > t_hard_cap:
        raise InvalidParameterError(f"study time {t} exceeds the hard cap {t_hard_cap}")


def validate_fraction(value: float, name: str, *, allow_zero: bool = False) -> None:
    """Validate a fraction in (0, 1], or [0, 1] when allow_zero is set.

    Raises:
        InvalidParameterError: If the value lies outside the interval.
    """
    validate_finite(value, name)
    lower_ok = value >= 0 if allow_zero else value > 0
    if not lower_ok or value > 1:
        interval = "[0, 1]" if allow_zero else "(0, 1]"
        raise InvalidParameterError(f"{name} must lie in {interval}, got {value}")


def validate_at_least(value: float, name: str, minimum: float) -> None:
    """Validate that a finite value is no smaller than minimum.

    Raises:
        InvalidParameterError: If the value is not finite or below minimum.
    """
    validate_finite(value, name)
    if value < minimum:
        raise InvalidParameterError(f"{name} must be >= {minimum:g}, got {value}")
