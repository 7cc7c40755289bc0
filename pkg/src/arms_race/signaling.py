"""Wage-signaling extension.

Families compare the credential wage net of the study cost needed to just
reach S_cut against the costless low wage. Everything here is in money units:
``wage_p`` (money per hour) takes the place of the utility cost coefficient.
A bias multiplier beta inflates the perceived credential wage; decisions may
be biased but realized payoffs never are.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from arms_race.core import Effort, FamilyParams
from arms_race.exceptions import InvalidParameterError
from arms_race.population import PopulationSpec
from arms_race.validation import validate_finite, validate_positive

DEFAULT_BETA_GRID: tuple[float, ...] = (1.0, 2.0, 5.0, 10.0, 20.0)


@dataclass(frozen=True)
class WageModel:
    """Wages with and without the credential, and the perception bias.

    Attributes:
        w_high: Wage with the credential.
        w_low: Wage without it.
        beta: Multiplier on the perceived credential wage (1 = unbiased).
    """

    w_high: float
    w_low: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        validate_positive(self.w_low, "w_low")
        validate_positive(self.w_high, "w_high")
        validate_positive(self.beta, "beta")
        if self.w_high <= self.w_low:
            raise InvalidParameterError(
                f"w_high ({self.w_high}) must exceed w_low ({self.w_low})"
            )

    def with_beta(self, beta: float) -> WageModel:
        return WageModel(w_high=self.w_high, w_low=self.w_low, beta=beta)


class Choice(str, Enum):
    STUDY = "study"
    QUIT = "quit"


@dataclass(frozen=True)
class ParticipationDecision:
    """Outcome of a participation decision.

    Attributes:
        choice: STUDY or QUIT.
        t_needed: Study time to just reach the threshold (0 when quitting).
        cost: Money cost of t_needed (0 when quitting).
        payoff: Realized payoff: w_high - cost when studying, w_low otherwise.
        alternative_payoff: Realized payoff of the option not taken.
    """

    choice: Choice
    t_needed: Effort
    cost: float
    payoff: float
    alternative_payoff: float


def signaling_cost_to_threshold(fam: FamilyParams, s_cut: float, wage_p: float) -> float:
    """Money cost of studying just long enough to reach s_cut: wage_p * s_cut / gamma."""
    validate_positive(wage_p, "wage_p")
    validate_finite(s_cut, "s_cut")
    if s_cut < 0:
        raise InvalidParameterError(f"s_cut must be >= 0, got {s_cut}")
    return wage_p * (s_cut / fam.gamma)


def decide_participation(
    cost_to_threshold: float,
    wages: WageModel,
    use_bias: bool = False,
    t_needed: Effort = 0.0,
) -> ParticipationDecision:
    """Study iff the (perceived) credential wage net of cost strictly beats w_low.

    Ties go to QUIT. With use_bias the credential wage is read as w_high * beta;
    the recorded payoffs stay unbiased.
    """
    if cost_to_threshold < 0:
        raise InvalidParameterError(f"cost must be >= 0, got {cost_to_threshold}")
    perceived = wages.w_high * wages.beta if use_bias else wages.w_high
    study_payoff = wages.w_high - cost_to_threshold
    if perceived - cost_to_threshold > wages.w_low:
        return ParticipationDecision(
            choice=Choice.STUDY,
            t_needed=t_needed,
            cost=cost_to_threshold,
            payoff=study_payoff,
            alternative_payoff=wages.w_low,
        )
    return ParticipationDecision(
        choice=Choice.QUIT,
        t_needed=0.0,
        cost=0.0,
        payoff=wages.w_low,
        alternative_payoff=study_payoff,
    )


def utility_signaling(
    fam: FamilyParams,
    t: Effort,
    s_cut: float,
    wages: WageModel,
    wage_p: float,
) -> float:
    """Wage-weighted payoff of studying t hours.

    Pass: w_high * beta * ln(2 + S - s_cut) - wage_p * t.
    Fail: w_low - wage_p * t.
    """
    s = fam.gamma * t
    c = wage_p * t
    if s >= s_cut:
        return wages.w_high * wages.beta * math.log(2 + s - s_cut) - c
    return wages.w_low - c


@dataclass(frozen=True)
class DecisionRow:
    """One family's cost-versus-wage decision point."""

    family_id: str
    gamma: float
    t_needed: Effort
    cost: float
    study_payoff: float
    quit_payoff: float
    choice: Choice


def signaling_decision_table(
    families: Sequence[FamilyParams],
    s_cut: float,
    wages: WageModel,
    wage_p: float,
    use_bias: bool = False,
) -> list[DecisionRow]:
    """Per-family decision points: who pays for the signal and who takes w_low."""
    rows: list[DecisionRow] = []
    for fam in families:
        cost = signaling_cost_to_threshold(fam, s_cut, wage_p)
        decision = decide_participation(cost, wages, use_bias)
        rows.append(
            DecisionRow(
                family_id=fam.id,
                gamma=fam.gamma,
                t_needed=s_cut / fam.gamma,
                cost=cost,
                study_payoff=wages.w_high - cost,
                quit_payoff=wages.w_low,
                choice=decision.choice,
            )
        )
    return rows


@dataclass(frozen=True)
class ParticipationSummary:
    """Participation at one beta: rate, realized mean payoff, participants' gamma/P spread."""

    beta: float
    participation_rate: float
    mean_payoff: float
    mean_effort: Effort
    pool_dispersion: float
    payoffs: tuple[float, ...]
    studied: tuple[bool, ...]


def participation_at_beta(
    families: Sequence[FamilyParams],
    wages: WageModel,
    s_cut: float,
    beta: float,
    wage_p: float,
) -> ParticipationSummary:
    """Run every family's biased decision at one beta."""
    biased = wages.with_beta(beta)
    decisions = [
        decide_participation(
            signaling_cost_to_threshold(fam, s_cut, wage_p),
            biased,
            use_bias=True,
            t_needed=s_cut / fam.gamma,
        )
        for fam in families
    ]
    studying = [d.choice is Choice.STUDY for d in decisions]
    ratios = np.array([f.gamma / f.p for f, s in zip(families, studying) if s], dtype=float)
    payoffs = tuple(d.payoff for d in decisions)
    return ParticipationSummary(
        beta=beta,
        participation_rate=sum(studying) / len(families),
        mean_payoff=float(np.mean(payoffs)),
        mean_effort=float(np.mean([d.t_needed for d in decisions])),
        pool_dispersion=float(np.std(ratios)) if ratios.size else 0.0,
        payoffs=payoffs,
        studied=tuple(studying),
    )


def beta_sensitivity(
    pop: PopulationSpec | Sequence[FamilyParams],
    wages: WageModel,
    s_cut: float,
    beta_grid: Sequence[float] = DEFAULT_BETA_GRID,
    wage_p: float = 100.0,
) -> list[ParticipationSummary]:
    """Participation rate and realized mean payoff across a grid of beta values.

    Raises:
        InvalidParameterError: If beta_grid is empty or holds a non-positive value.
    """
    if not beta_grid:
        raise InvalidParameterError("beta_grid must not be empty")
    for beta in beta_grid:
        validate_positive(beta, "beta")
    families = pop.sample().families() if isinstance(pop, PopulationSpec) else list(pop)
    return [participation_at_beta(families, wages, s_cut, beta, wage_p) for beta in beta_grid]
