"""Two-family best responses and best-response dynamics.

With two families the threshold is the mean of both scores, so family i's
pass-branch utility is

    u_i = ln(2 + gamma_i t_i - (gamma_i t_i + gamma_j t_j) / 2) - P_i t_i

and the first-order condition gives the closed-form best response
t_i* = 1/P_i + (gamma_j t_j - 4) / gamma_i. At any interior best response the
log argument equals gamma_i / (2 P_i).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

from arms_race.core import Effort, FamilyParams, UtilityOutcome, utility
from arms_race.exceptions import DomainError, InvalidParameterError
from arms_race.solvers import grid_argmax
from arms_race.validation import DEFAULT_T_HARD_CAP, validate_effort, validate_positive

logger = logging.getLogger(__name__)

CONVERGENCE_TOL = 1e-9


@dataclass(frozen=True)
class TwoFamilySetup:
    """Parameters of the two-family obey/disobey game.

    Attributes:
        fam1: Family 1 (row player).
        fam2: Family 2 (column player).
        t_obey: Policy-compliant study time.
        t_hard_cap: Upper bound on any study time.
    """

    fam1: FamilyParams
    fam2: FamilyParams
    t_obey: Effort
    t_hard_cap: float = DEFAULT_T_HARD_CAP

    def __post_init__(self) -> None:
        validate_positive(self.t_hard_cap, "t_hard_cap")
        validate_positive(self.t_obey, "t_obey")
        validate_effort(self.t_obey, self.t_hard_cap)


def _log_argument(fam_i: FamilyParams, fam_j: FamilyParams, t_i: Effort, t_j: Effort) -> float:
    s_i = fam_i.gamma * t_i
    return 2.0 + s_i - (s_i + fam_j.gamma * t_j) / 2


def two_family_utility(
    fam_i: FamilyParams, fam_j: FamilyParams, t_i: Effort, t_j: Effort
) -> UtilityOutcome:
    """Family i's outcome when S_cut is the mean of the two scores."""
    s_cut = (fam_i.gamma * t_i + fam_j.gamma * t_j) / 2
    return utility(fam_i, t_i, s_cut)


def marginal_utility_two_family(
    fam_i: FamilyParams, fam_j: FamilyParams, t_i: Effort, t_j: Effort
) -> float:
    """d u_i / d t_i on the log branch: (gamma_i / 2) / x - P_i.

    Raises:
        DomainError: If the log argument x is not positive. The error carries
            the fail-branch slope -P_i.
    """
    x = _log_argument(fam_i, fam_j, t_i, t_j)
    if x <= 0:
        raise DomainError(
            f"log argument {x:.6g} <= 0: family {fam_i.id} is below the two-family threshold",
            fail_branch_derivative=-fam_i.p,
        )
    return (fam_i.gamma / 2) / x - fam_i.p


def curvature_two_family(
    fam_i: FamilyParams, fam_j: FamilyParams, t_i: Effort, t_j: Effort
) -> float:
    """d^2 u_i / d t_i^2 on the log branch: -gamma_i^2 / (4 x^2)."""
    x = _log_argument(fam_i, fam_j, t_i, t_j)
    if x <= 0:
        raise DomainError(
            f"log argument {x:.6g} <= 0: curvature undefined", fail_branch_derivative=-fam_i.p
        )
    return -(fam_i.gamma**2) / (4 * x**2)


def best_response_two_family(
    fam_i: FamilyParams,
    gamma_j: float,
    t_j: Effort,
    t_hard_cap: float = DEFAULT_T_HARD_CAP,
) -> Effort:
    """Closed-form best response 1/P_i + (gamma_j t_j - 4) / gamma_i, clamped to [0, cap]."""
    t = 1 / fam_i.p + (gamma_j * t_j - 4) / fam_i.gamma
    return min(max(t, 0.0), t_hard_cap)


def best_response_numeric_oracle(
    fam: FamilyParams,
    utility_fn: Callable[[float], float],
    t_hard_cap: float = DEFAULT_T_HARD_CAP,
    grid_points: int = 481,
) -> Effort:
    """Numeric argmax of utility_fn over [0, t_hard_cap].

    Independent check of the closed-form best responses: a coarse grid locates
    the global maximum, a golden-section search polishes it. Ties go to the
    leftmost maximizer, so flat and decreasing utilities return 0.

    Args:
        fam: The family whose effort is optimized (used for logging only).
        utility_fn: Total function t -> utility on [0, t_hard_cap].
        t_hard_cap: Upper end of the search interval.
        grid_points: Coarse grid resolution.
    """
    t = grid_argmax(utility_fn, 0.0, t_hard_cap, grid_points=grid_points)
    logger.debug("oracle best response for %s: %.9f", fam.id, t)
    return t


def escalation_rate(fam1: FamilyParams, fam2: FamilyParams) -> float:
    """Growth of t1 per best-response round-trip in the mutual-disobey state.

    Substituting BR2 into BR1 gives t1 -> t1 + delta with
    delta = 1/P1 + gamma2 / (P2 gamma1) - 8 / gamma1. Zero delta means every
    consistent profile is a fixed point; nonzero delta means no finite
    interior mutual best response exists.
    """
    return 1 / fam1.p + fam2.gamma / (fam2.p * fam1.gamma) - 8 / fam1.gamma


class UpdateScheme(str, Enum):
    """How the two families revise efforts each round."""

    SIMULTANEOUS = "simultaneous"
    ALTERNATING = "alternating"


class DynamicsStatus(str, Enum):
    """Why a best-response dynamics run stopped."""

    CONVERGED = "converged"
    CYCLE = "cycle"
    CAPPED = "capped"
    MAX_ROUNDS = "max_rounds"


@dataclass(frozen=True)
class DynamicsTrace:
    """Effort profiles visited by best-response dynamics, starting profile first."""

    profiles: list[tuple[Effort, Effort]] = field(default_factory=list)
    status: DynamicsStatus = DynamicsStatus.MAX_ROUNDS

    @property
    def rounds(self) -> int:
        return len(self.profiles) - 1


def _same_profile(a: tuple[Effort, Effort], b: tuple[Effort, Effort]) -> bool:
    return abs(a[0] - b[0]) < CONVERGENCE_TOL and abs(a[1] - b[1]) < CONVERGENCE_TOL


def best_response_dynamics(
    setup: TwoFamilySetup,
    t0: tuple[Effort, Effort],
    rounds: int,
    scheme: UpdateScheme = UpdateScheme.SIMULTANEOUS,
) -> DynamicsTrace:
    """Iterate two-family best responses from t0.

    Simultaneous updates answer the previous profile; alternating updates let
    family 2 answer family 1's fresh choice within the same round. Stops early
    when the profile repeats within 1e-9: CONVERGED if it equals the previous
    profile, CYCLE if it equals an earlier one. Also stops when an effort
    reaches t_hard_cap.

    Raises:
        InvalidParameterError: If rounds < 1.
    """
    if rounds < 1:
        raise InvalidParameterError(f"rounds must be >= 1, got {rounds}")

    fam1, fam2, cap = setup.fam1, setup.fam2, setup.t_hard_cap
    t1, t2 = t0
    profiles = [(t1, t2)]
    status = DynamicsStatus.MAX_ROUNDS

    for r in range(1, rounds + 1):
        new_t1 = best_response_two_family(fam1, fam2.gamma, t2, cap)
        partner = new_t1 if scheme is UpdateScheme.ALTERNATING else t1
        new_t2 = best_response_two_family(fam2, fam1.gamma, partner, cap)
        profiles.append((new_t1, new_t2))
        logger.debug("round %d: t1=%.6f t2=%.6f", r, new_t1, new_t2)

        if _same_profile((new_t1, new_t2), (t1, t2)):
            status = DynamicsStatus.CONVERGED
            break
        if any(_same_profile((new_t1, new_t2), old) for old in profiles[:-2]):
            status = DynamicsStatus.CYCLE
            break
        t1, t2 = new_t1, new_t2
        if t1 >= cap or t2 >= cap:
            status = DynamicsStatus.CAPPED
            break

    return DynamicsTrace(profiles=profiles, status=status)


def log_argument_at_best_response(fam: FamilyParams) -> float:
    """Log argument gamma / (2P) reached at any interior two-family best response."""
    return fam.gamma / (2 * fam.p)


def interior_payoff_at_best_response(fam: FamilyParams, t_star: Effort) -> float:
    """ln(gamma / 2P) - P t*: payoff at an interior best response that clears the mean score."""
    return math.log(log_argument_at_best_response(fam)) - fam.p * t_star
