"""Core model quantities: score, cost, threshold and utility.

Every function here is pure. Scalar versions use ``math``; the array
versions (``scores``, ``utilities``) serve population runs.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

from arms_race.exceptions import EmptyPopulationError, InvalidParameterError
from arms_race.validation import validate_finite, validate_positive

Effort: TypeAlias = float
"""Study time in hours, within [0, t_hard_cap]."""


class Rationality(str, Enum):
    """How a family treats a hopeless competition."""

    BOUNDED = "bounded"
    RATIONAL = "rational"


@dataclass(frozen=True)
class FamilyParams:
    """One competitor.

    Attributes:
        id: Opaque identifier.
        gamma: Aptitude, score points per hour of study.
        p: Time-cost coefficient, utility per hour.
        rationality: BOUNDED families never quit; RATIONAL ones may.
    """

    id: str
    gamma: float
    p: float
    rationality: Rationality = Rationality.BOUNDED

    def __post_init__(self) -> None:
        validate_positive(self.gamma, "gamma")
        validate_positive(self.p, "p")


class ThresholdMode(str, Enum):
    """How the passing threshold is formed."""

    FIXED = "fixed"
    MEAN_PLUS_K_SIGMA = "mean_plus_k_sigma"


@dataclass(frozen=True)
class ThresholdSpec:
    """Rule producing S_cut from a score population.

    Use the ``fixed`` and ``mean_plus_k_sigma`` constructors.
    """

    mode: ThresholdMode
    value: float

    def __post_init__(self) -> None:
        validate_finite(self.value, "s_cut" if self.mode is ThresholdMode.FIXED else "k")

    @classmethod
    def fixed(cls, s_cut: float) -> ThresholdSpec:
        return cls(ThresholdMode.FIXED, s_cut)

    @classmethod
    def mean_plus_k_sigma(cls, k: float) -> ThresholdSpec:
        return cls(ThresholdMode.MEAN_PLUS_K_SIGMA, k)

    @property
    def needs_scores(self) -> bool:
        return self.mode is ThresholdMode.MEAN_PLUS_K_SIGMA


@dataclass(frozen=True)
class UtilityOutcome:
    """Score, cost and utility of one family at one threshold."""

    score: float
    cost: float
    utility: float
    passed: bool


def score(gamma: float, t: Effort) -> float:
    """Exam score S = gamma * t."""
    return gamma * t


def cost(p: float, t: Effort) -> float:
    """Study cost C = p * t."""
    return p * t


def payoff(gamma: float, p: float, t: Effort, s_cut: float) -> float:
    """Utility value of study time t against threshold s_cut.

    Passing (S >= s_cut) yields ln(2 + S - s_cut) - C; failing yields -C.
    The log argument is at least 2 on the pass branch, so this is total.
    """
    s = gamma * t
    c = p * t
    if s >= s_cut:
        return math.log(2.0 + s - s_cut) - c
    return -c


def utility(fam: FamilyParams, t: Effort, s_cut: float) -> UtilityOutcome:
    """Evaluate a family's outcome at study time t against s_cut.

    Args:
        fam: The competing family.
        t: Study time in hours (>= 0).
        s_cut: The passing threshold.

    Returns:
        UtilityOutcome with passed = (score >= s_cut).
    """
    s = score(fam.gamma, t)
    c = cost(fam.p, t)
    passed = s >= s_cut
    u = math.log(2.0 + s - s_cut) - c if passed else -c
    return UtilityOutcome(score=s, cost=c, utility=u, passed=passed)


def threshold(scores: Sequence[float] | ArrayLike, spec: ThresholdSpec) -> float:
    """Form S_cut from a score population.

    Fixed mode returns the stored value. Mean-plus-k-sigma mode returns
    mean(scores) + k * stdev(scores), with the population stdev (ddof=0).

    Raises:
        EmptyPopulationError: If scores is empty in mean-plus-k-sigma mode.
    """
    if spec.mode is ThresholdMode.FIXED:
        return spec.value

    values = np.asarray(scores, dtype=float)
    if values.size == 0:
        raise EmptyPopulationError("cannot form a mean-plus-k-sigma threshold over no scores")
    mean = float(np.mean(values))
    if spec.value == 0:
        return mean
    return mean + spec.value * float(np.std(values))


def threshold_from_moments(mean: float, sigma: float, k: float) -> float:
    """S_cut = mean + k * sigma for a score distribution given by its moments."""
    validate_finite(mean, "mean")
    validate_finite(k, "k")
    validate_finite(sigma, "sigma")
    if sigma < 0:
        raise InvalidParameterError(f"sigma must be >= 0, got {sigma}")
    return mean + k * sigma


def scores(gamma: ArrayLike, t: ArrayLike) -> NDArray[np.float64]:
    """Vectorized score."""
    return np.asarray(gamma, dtype=float) * np.asarray(t, dtype=float)


def utilities(gamma: ArrayLike, p: ArrayLike, t: ArrayLike, s_cut: float) -> NDArray[np.float64]:
    """Vectorized utility against a common threshold."""
    s = scores(gamma, t)
    c = np.asarray(p, dtype=float) * np.asarray(t, dtype=float)
    passed = s >= s_cut
    # failing entries get a dummy log argument; np.where discards them
    log_arg = np.where(passed, 2.0 + s - s_cut, 1.0)
    return np.where(passed, np.log(log_arg) - c, -c)
