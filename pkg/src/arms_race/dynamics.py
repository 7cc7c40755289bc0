"""Threshold feedback simulation for N families.

Each round every active family best-responds to last round's threshold,
taking it as given:

    t_i* = 1/P_i + (S_cut - 2) / gamma_i     (clamped to [0, t_hard_cap])

Scores, sigma_S and S_cut are then recomputed from the new efforts. Under
interior responses every score becomes gamma_i/P_i + S_cut - 2, so S_cut
climbs by mean(gamma/P) - 2 + k * stdev(gamma/P) per round and sigma_S
settles at stdev(gamma/P).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from arms_race.core import Effort, FamilyParams, Rationality, ThresholdSpec, payoff, threshold
from arms_race.core import utilities as utility_array
from arms_race.exceptions import DomainError, EmptyPopulationError, InvalidParameterError
from arms_race.population import Population, PopulationSpec
from arms_race.solvers import bisect_root
from arms_race.validation import (
    DEFAULT_T_HARD_CAP,
    validate_effort,
    validate_finite,
    validate_positive,
)

logger = logging.getLogger(__name__)

CONVERGENCE_TOL = 1e-9
DEFAULT_DIVERGENCE_CAP = 1e6


def best_response_population(
    fam: FamilyParams, s_cut: float, t_hard_cap: float = DEFAULT_T_HARD_CAP
) -> Effort:
    """Best response to a given threshold: 1/P + (s_cut - 2)/gamma, clamped to [0, cap]."""
    t = 1 / fam.p + (s_cut - 2) / fam.gamma
    return min(max(t, 0.0), t_hard_cap)


def best_responses(
    gamma: NDArray[np.float64],
    p: NDArray[np.float64],
    s_cut: float,
    t_hard_cap: float = DEFAULT_T_HARD_CAP,
) -> NDArray[np.float64]:
    """Vectorized best_response_population."""
    return np.clip(1 / p + (s_cut - 2) / gamma, 0.0, t_hard_cap)


def marginal_utility_population(fam: FamilyParams, t: Effort, s_cut: float) -> float:
    """d u / d t on the log branch at a fixed threshold: gamma / x - P.

    Raises:
        DomainError: If the log argument x = 2 + gamma t - s_cut is not positive.
    """
    x = 2 + fam.gamma * t - s_cut
    if x <= 0:
        raise DomainError(
            f"log argument {x:.6g} <= 0 for family {fam.id}", fail_branch_derivative=-fam.p
        )
    return fam.gamma / x - fam.p


def max_noncompetitive_time(fam: FamilyParams, t_hard_cap: float = DEFAULT_T_HARD_CAP) -> Effort:
    """Rational stopping point: the larger root of ln(2 + gamma t) - P t = 0.

    Beyond it utility at S_cut = 0 is negative and decreasing. Returns
    t_hard_cap when utility is still non-negative there.
    """

    def excess(t: float) -> float:
        return math.log(2 + fam.gamma * t) - fam.p * t

    lower = best_response_population(fam, 0.0, t_hard_cap)
    if excess(t_hard_cap) >= 0:
        return t_hard_cap
    return bisect_root(excess, lower, t_hard_cap)


def decide_effort(
    fam: FamilyParams,
    s_cut: float,
    quit_payoff: float = 0.0,
    t_hard_cap: float = DEFAULT_T_HARD_CAP,
) -> Effort:
    """Effort a family commits to against s_cut.

    Bounded families always play the best response. Rational families quit
    (t = 0) when the best response is worth less than quit_payoff.
    """
    t_star = best_response_population(fam, s_cut, t_hard_cap)
    if fam.rationality is Rationality.BOUNDED:
        return t_star
    if payoff(fam.gamma, fam.p, t_star, s_cut) < quit_payoff:
        return 0.0
    return t_star


@dataclass(frozen=True)
class ShiftEffect:
    """Best response and its utility before and after a threshold change."""

    t_before: Effort
    t_after: Effort
    u_before: float
    u_after: float

    @property
    def effort_change(self) -> float | None:
        """Relative change of the best-response effort; None from a zero effort."""
        return _relative_change(self.t_before, self.t_after)

    @property
    def utility_change(self) -> float | None:
        """Relative change of the best-response utility; None from a zero utility."""
        return _relative_change(self.u_before, self.u_after)


def _relative_change(before: float, after: float) -> float | None:
    if before == 0:
        return None
    return after / before - 1


def threshold_shift_effect(
    fam: FamilyParams,
    s_cut_before: float,
    s_cut_after: float,
    t_hard_cap: float = DEFAULT_T_HARD_CAP,
) -> ShiftEffect:
    """Compare one family's optimum at two thresholds."""
    t0 = best_response_population(fam, s_cut_before, t_hard_cap)
    t1 = best_response_population(fam, s_cut_after, t_hard_cap)
    return ShiftEffect(
        t_before=t0,
        t_after=t1,
        u_before=payoff(fam.gamma, fam.p, t0, s_cut_before),
        u_after=payoff(fam.gamma, fam.p, t1, s_cut_after),
    )


@dataclass(frozen=True)
class SimConfig:
    """Feedback-loop settings.

    Attributes:
        threshold: How S_cut is formed each round.
        initial_effort: Round-0 study time of every family.
        rounds_max: Maximum number of response rounds (>= 1).
        divergence_cap: Stop once S_cut exceeds this.
        quit_payoff: Outside option of a rational family that quits.
        t_hard_cap: Upper bound on study time.
        quitters_in_pool: Keep quitters in the score pool at score 0.
    """

    threshold: ThresholdSpec
    initial_effort: Effort = 2.0
    rounds_max: int = 50
    divergence_cap: float = DEFAULT_DIVERGENCE_CAP
    quit_payoff: float = 0.0
    t_hard_cap: float = DEFAULT_T_HARD_CAP
    quitters_in_pool: bool = False

    def __post_init__(self) -> None:
        if self.rounds_max < 1:
            raise InvalidParameterError(f"rounds_max must be >= 1, got {self.rounds_max}")
        validate_positive(self.t_hard_cap, "t_hard_cap")
        validate_effort(self.initial_effort, self.t_hard_cap)
        validate_finite(self.divergence_cap, "divergence_cap")
        validate_finite(self.quit_payoff, "quit_payoff")


class SimStatus(str, Enum):
    """Why a feedback simulation stopped."""

    CONVERGED = "converged"
    MAX_ROUNDS = "max_rounds"
    DIVERGED = "diverged"
    EMPTY_POPULATION = "empty_population"


@dataclass(frozen=True, eq=False)
class RoundRecord:
    """State after one round.

    ``utilities`` are realized against this round's S_cut; ``anticipated``
    holds each family's utility against the threshold it responded to.
    Inactive (quit) families carry t = 0 and the quit payoff.
    """

    round: int
    efforts: NDArray[np.float64]
    scores: NDArray[np.float64]
    utilities: NDArray[np.float64]
    anticipated: NDArray[np.float64]
    active: NDArray[np.bool_]
    s_cut: float
    sigma_s: float
    mean_t: float
    welfare_total: float
    welfare_mean: float
    n_active: int
    n_exhausted: int

    def to_dict(self) -> dict[str, object]:
        """JSON-ready record with full float precision."""
        return {
            "round": self.round,
            "s_cut": self.s_cut,
            "sigma_s": self.sigma_s,
            "mean_t": self.mean_t,
            "welfare_total": self.welfare_total,
            "welfare_mean": self.welfare_mean,
            "n_active": self.n_active,
            "n_exhausted": self.n_exhausted,
            "efforts": self.efforts.tolist(),
            "scores": self.scores.tolist(),
            "utilities": self.utilities.tolist(),
        }


@dataclass(frozen=True, eq=False)
class SimTrace:
    """Per-round records of one feedback simulation, round 0 first."""

    ids: tuple[str, ...]
    records: tuple[RoundRecord, ...]
    status: SimStatus

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[RoundRecord]:
        return iter(self.records)

    def __getitem__(self, index: int) -> RoundRecord:
        return self.records[index]

    @property
    def final(self) -> RoundRecord:
        return self.records[-1]

    @property
    def s_cut_path(self) -> list[float]:
        return [rec.s_cut for rec in self.records]

    @property
    def sigma_path(self) -> list[float]:
        return [rec.sigma_s for rec in self.records]


def _pool(
    scores: NDArray[np.float64], active: NDArray[np.bool_], keep_quitters: bool
) -> NDArray[np.float64]:
    return scores if keep_quitters else scores[active]


def _record(
    r: int,
    efforts: NDArray[np.float64],
    scores: NDArray[np.float64],
    realized: NDArray[np.float64],
    anticipated: NDArray[np.float64],
    active: NDArray[np.bool_],
    s_cut: float,
    pool: NDArray[np.float64],
) -> RoundRecord:
    n = len(efforts)
    # sums run in family order
    total = float(np.sum(realized))
    return RoundRecord(
        round=r,
        efforts=efforts,
        scores=scores,
        utilities=realized,
        anticipated=anticipated,
        active=active.copy(),
        s_cut=float(s_cut),
        sigma_s=float(np.std(pool)) if pool.size else 0.0,
        mean_t=float(np.mean(efforts)),
        welfare_total=total,
        welfare_mean=total / n,
        n_active=int(np.count_nonzero(active)),
        n_exhausted=int(np.count_nonzero(realized < 0)),
    )


def simulate_population(population: Population, cfg: SimConfig) -> SimTrace:
    """Run the feedback loop on an already-sampled population.

    Round 0 scores everyone at the initial effort. Each later round applies
    simultaneous responses to the previous S_cut, then re-forms S_cut. Stops at
    rounds_max, when S_cut passes divergence_cap or every active family sits at
    the hard cap (diverged), when no effort moves by 1e-9 (converged), or when
    everyone quits and the threshold needs scores (empty_population).
    """
    n = len(population)
    gamma, p, rational = population.gamma, population.p, population.rational
    cap, quit_payoff = cfg.t_hard_cap, cfg.quit_payoff

    active = np.ones(n, dtype=bool)
    efforts = np.full(n, cfg.initial_effort, dtype=float)
    scores = gamma * efforts
    pool = _pool(scores, active, cfg.quitters_in_pool)
    s_cut = threshold(pool, cfg.threshold)
    realized = utility_array(gamma, p, efforts, s_cut)
    records = [_record(0, efforts, scores, realized, realized, active, s_cut, pool)]
    status = SimStatus.MAX_ROUNDS

    for r in range(1, cfg.rounds_max + 1):
        responses = best_responses(gamma, p, s_cut, cap)
        expected = utility_array(gamma, p, responses, s_cut)
        quitting = active & rational & (expected < quit_payoff)
        if quitting.any():
            logger.debug("round %d: %d families quit", r, int(np.count_nonzero(quitting)))
        active = active & ~quitting

        new_efforts = np.where(active, responses, 0.0)
        anticipated = np.where(active, expected, quit_payoff)
        scores = gamma * new_efforts
        pool = _pool(scores, active, cfg.quitters_in_pool)
        try:
            new_s_cut = threshold(pool, cfg.threshold)
        except EmptyPopulationError:
            logger.info("round %d: every family quit; no threshold can be formed", r)
            status = SimStatus.EMPTY_POPULATION
            break

        realized = np.where(active, utility_array(gamma, p, new_efforts, new_s_cut), quit_payoff)
        records.append(
            _record(r, new_efforts, scores, realized, anticipated, active, new_s_cut, pool)
        )
        logger.debug("round %d: s_cut=%.6f sigma=%.6f", r, new_s_cut, records[-1].sigma_s)

        change = float(np.max(np.abs(new_efforts - efforts)))
        efforts, s_cut = new_efforts, new_s_cut
        if s_cut > cfg.divergence_cap or (active.any() and bool(np.all(efforts[active] >= cap))):
            status = SimStatus.DIVERGED
            break
        if change < CONVERGENCE_TOL:
            status = SimStatus.CONVERGED
            break

    logger.info("simulation stopped after %d rounds: %s", len(records) - 1, status.value)
    return SimTrace(ids=population.ids, records=tuple(records), status=status)


def simulate_feedback(pop: PopulationSpec, cfg: SimConfig) -> SimTrace:
    """Sample pop from its seed and run the feedback loop."""
    return simulate_population(pop.sample(), cfg)


@dataclass(frozen=True)
class RoundWelfare:
    """Per-round welfare totals."""

    round: int
    s_cut: float
    welfare_total: float
    welfare_mean: float
    mean_t: float
    n_active: int
    n_exhausted: int


@dataclass(frozen=True)
class WelfareSummary:
    """Welfare accounting of a trace; final-round figures plus the per-round path."""

    rounds: tuple[RoundWelfare, ...]
    status: SimStatus
    total_utility: float
    mean_utility: float
    mean_effort: float
    exhausted_fraction: float
    quit_fraction: float
    s_cut_path: tuple[float, ...]


def welfare_report(trace: SimTrace) -> WelfareSummary:
    """Summarize welfare over a trace.

    Raises:
        InvalidParameterError: If the trace has no rounds.
    """
    if not len(trace):
        raise InvalidParameterError("cannot summarize an empty trace")

    rounds = tuple(
        RoundWelfare(
            round=rec.round,
            s_cut=rec.s_cut,
            welfare_total=rec.welfare_total,
            welfare_mean=rec.welfare_mean,
            mean_t=rec.mean_t,
            n_active=rec.n_active,
            n_exhausted=rec.n_exhausted,
        )
        for rec in trace
    )
    final = trace.final
    n = len(final.efforts)
    return WelfareSummary(
        rounds=rounds,
        status=trace.status,
        total_utility=final.welfare_total,
        mean_utility=final.welfare_mean,
        mean_effort=final.mean_t,
        exhausted_fraction=final.n_exhausted / n,
        quit_fraction=(n - final.n_active) / n,
        s_cut_path=tuple(trace.s_cut_path),
    )
