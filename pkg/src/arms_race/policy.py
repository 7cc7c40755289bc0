"""Policy scenarios and their welfare/equity trade-offs.

Scenarios:
- CeeBaseline: everyone competes in one pool
- Diversion: only the top keep_fraction compete; the rest receive a subsidy
- BetaReduction: the credential-wage bias drops from beta_before to beta_after
- ExamRedesign: scores weight aptitude more heavily (S = gamma^a * t)

Equity metrics: participation_share (fraction allowed to compete),
utility_gini (over every original family, subsidies included, utilities
shifted so the minimum is 0) and excluded_utility_gap (mean competitor
utility minus the subsidy).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations

import numpy as np
from numpy.typing import ArrayLike

from arms_race.dynamics import SimConfig, SimTrace, simulate_population
from arms_race.exceptions import DegeneratePoolError, InvalidParameterError
from arms_race.population import Population, PopulationSpec
from arms_race.signaling import ParticipationSummary, WageModel, participation_at_beta
from arms_race.validation import (
    validate_at_least,
    validate_finite,
    validate_fraction,
    validate_positive,
)

logger = logging.getLogger(__name__)


class RankBy(str, Enum):
    """Score used to select the diversion pool."""

    INITIAL_SCORE = "initial_score"
    FIRST_ROUND_SCORE = "first_round_score"


@dataclass(frozen=True)
class CeeBaseline:
    """Single exam open to the whole population."""


@dataclass(frozen=True)
class Diversion:
    """Keep the top keep_fraction in the academic pool; subsidize the rest."""

    keep_fraction: float
    subsidy: float = 0.0
    rank_by: RankBy = RankBy.INITIAL_SCORE

    def __post_init__(self) -> None:
        validate_fraction(self.keep_fraction, "keep_fraction")
        validate_finite(self.subsidy, "subsidy")


@dataclass(frozen=True)
class BetaReduction:
    """Lower the credential-wage bias and compare participation."""

    wages: WageModel
    beta_before: float
    beta_after: float
    s_cut: float
    wage_p: float = 100.0

    def __post_init__(self) -> None:
        validate_positive(self.beta_before, "beta_before")
        validate_positive(self.beta_after, "beta_after")
        validate_positive(self.wage_p, "wage_p")


@dataclass(frozen=True)
class ExamRedesign:
    """Aptitude-emphasis exponent a >= 1 (a = 1 is the current exam)."""

    aptitude_weight: float

    def __post_init__(self) -> None:
        validate_at_least(self.aptitude_weight, "aptitude_weight", 1.0)


ScenarioKind = CeeBaseline | Diversion | BetaReduction | ExamRedesign


@dataclass(frozen=True)
class PolicyScenario:
    """A named policy applied to a base population and simulation config."""

    name: str
    kind: ScenarioKind
    base_pop: PopulationSpec
    sim: SimConfig


@dataclass(frozen=True)
class Equity:
    participation_share: float
    utility_gini: float
    excluded_utility_gap: float | None = None


@dataclass(frozen=True)
class PolicyReport:
    """Welfare and equity outcome of one scenario.

    welfare_mean is per competing family; welfare_total covers every original
    family, subsidies included.
    """

    scenario: str
    welfare_total: float
    welfare_mean: float
    s_cut_final: float
    mean_effort: float
    equity: Equity
    status: str
    extras: dict[str, float] = field(default_factory=dict, compare=False, hash=False)

    def to_dict(self) -> dict[str, object]:
        return {
            "scenario": self.scenario,
            "welfare_total": self.welfare_total,
            "welfare_mean": self.welfare_mean,
            "s_cut_final": self.s_cut_final,
            "mean_effort": self.mean_effort,
            "participation_share": self.equity.participation_share,
            "utility_gini": self.equity.utility_gini,
            "excluded_utility_gap": self.equity.excluded_utility_gap,
            "status": self.status,
            **self.extras,
        }


def utility_gini(values: ArrayLike) -> float:
    """Gini index of utilities after shifting the minimum to 0.

    Utilities can be negative; the shift keeps the index in [0, 1). All-equal
    values give 0.
    """
    x = np.sort(np.asarray(values, dtype=float))
    if x.size == 0:
        return 0.0
    x = x - x[0]
    total = float(np.sum(x))
    if total <= 0:
        return 0.0
    n = x.size
    ranks = np.arange(1, n + 1)
    g = 2 * float(np.sum(ranks * x)) / (n * total) - (n + 1) / n
    return min(max(g, 0.0), 1.0)


def _as_population(pop: PopulationSpec | Population) -> Population:
    return pop.sample() if isinstance(pop, PopulationSpec) else pop


def _trace_report(
    name: str, trace: SimTrace, extras: dict[str, float] | None = None
) -> PolicyReport:
    final = trace.final
    return PolicyReport(
        scenario=name,
        welfare_total=final.welfare_total,
        welfare_mean=final.welfare_mean,
        s_cut_final=final.s_cut,
        mean_effort=final.mean_t,
        equity=Equity(participation_share=1.0, utility_gini=utility_gini(final.utilities)),
        status=trace.status.value,
        extras={"rounds": float(len(trace) - 1), **(extras or {})},
    )


def run_cee_baseline(
    pop: PopulationSpec | Population, sim: SimConfig, name: str = "cee_baseline"
) -> PolicyReport:
    """Everyone competes in one feedback simulation; participation_share = 1."""
    return _trace_report(name, simulate_population(_as_population(pop), sim))


def diversion_pool(
    population: Population,
    sim: SimConfig,
    keep_fraction: float,
    rank_by: RankBy = RankBy.INITIAL_SCORE,
) -> list[int]:
    """Indices of the retained families, in original order.

    Ranking is stable (ties keep family order); floor(keep_fraction * n)
    families are kept.

    Raises:
        DegeneratePoolError: If fewer than two families would remain.
    """
    validate_fraction(keep_fraction, "keep_fraction")
    n = len(population)
    kept = math.floor(keep_fraction * n + 1e-9)
    if kept < 2:
        raise DegeneratePoolError(
            f"keeping {keep_fraction:g} of {n} families leaves {kept} competitor(s)"
        )

    if rank_by is RankBy.FIRST_ROUND_SCORE:
        first = simulate_population(population, replace(sim, rounds_max=1))
        ranking = first.final.scores
    else:
        ranking = population.gamma * sim.initial_effort
    order = np.argsort(-ranking, kind="stable")
    return sorted(int(i) for i in order[:kept])


def run_diversion(
    pop: PopulationSpec | Population,
    sim: SimConfig,
    keep_fraction: float,
    subsidy: float = 0.0,
    rank_by: RankBy = RankBy.INITIAL_SCORE,
    name: str = "diversion",
) -> PolicyReport:
    """Simulate only the top keep_fraction; excluded families receive the subsidy.

    Raises:
        DegeneratePoolError: If the retained pool has fewer than two families.
    """
    population = _as_population(pop)
    n = len(population)
    keep = diversion_pool(population, sim, keep_fraction, rank_by)
    trace = simulate_population(population.subset(keep), sim)
    logger.debug("diversion %s keeps %d of %d families", name, len(keep), n)

    final = trace.final
    retained = final.utilities
    excluded = n - len(keep)
    everyone = np.concatenate([retained, np.full(excluded, subsidy, dtype=float)])
    gap = float(np.mean(retained)) - subsidy if excluded else None
    return PolicyReport(
        scenario=name,
        welfare_total=final.welfare_total + subsidy * excluded,
        welfare_mean=final.welfare_mean,
        s_cut_final=final.s_cut,
        mean_effort=final.mean_t,
        equity=Equity(
            participation_share=len(keep) / n,
            utility_gini=utility_gini(everyone),
            excluded_utility_gap=gap,
        ),
        status=trace.status.value,
        extras={"rounds": float(len(trace) - 1)},
    )


def _participation_report(
    name: str, summary: ParticipationSummary, wages: WageModel, s_cut: float
) -> PolicyReport:
    payoffs = np.asarray(summary.payoffs, dtype=float)
    studied = np.asarray(summary.studied, dtype=bool)
    gap = None
    if studied.any() and not studied.all():
        gap = float(np.mean(payoffs[studied])) - wages.w_low
    return PolicyReport(
        scenario=name,
        welfare_total=float(np.sum(payoffs)),
        welfare_mean=summary.mean_payoff,
        s_cut_final=s_cut,
        mean_effort=summary.mean_effort,
        equity=Equity(
            participation_share=summary.participation_rate,
            utility_gini=utility_gini(payoffs),
            excluded_utility_gap=gap,
        ),
        status="evaluated",
        extras={"beta": summary.beta, "pool_dispersion": summary.pool_dispersion},
    )


def run_beta_reduction(
    pop: PopulationSpec | Population,
    wages: WageModel,
    beta_before: float,
    beta_after: float,
    s_cut: float,
    wage_p: float = 100.0,
    name: str = "beta_reduction",
) -> tuple[PolicyReport, PolicyReport]:
    """Participation, realized payoffs and pool dispersion before and after a beta cut."""
    validate_positive(beta_before, "beta_before")
    validate_positive(beta_after, "beta_after")
    families = _as_population(pop).families()
    reports = []
    for label, beta in (("before", beta_before), ("after", beta_after)):
        summary = participation_at_beta(families, wages, s_cut, beta, wage_p)
        reports.append(_participation_report(f"{name}:{label}", summary, wages, s_cut))
    return reports[0], reports[1]


def run_exam_redesign(
    pop: PopulationSpec | Population,
    sim: SimConfig,
    aptitude_weight: float,
    name: str = "exam_redesign",
) -> PolicyReport:
    """Rerun the feedback loop with scores gamma^a * t and compare mean effort to a = 1."""
    validate_at_least(aptitude_weight, "aptitude_weight", 1.0)
    population = _as_population(pop)
    baseline = simulate_population(population, sim)
    redesigned = simulate_population(population.with_gamma(population.gamma**aptitude_weight), sim)
    baseline_effort = baseline.final.mean_t
    return _trace_report(
        name,
        redesigned,
        {
            "aptitude_weight": aptitude_weight,
            "baseline_mean_effort": baseline_effort,
            "mean_effort_reduction": baseline_effort - redesigned.final.mean_t,
        },
    )


def run_policy_scenario(scenario: PolicyScenario) -> list[PolicyReport]:
    """Run one scenario; beta reductions yield a before/after pair."""
    kind, name = scenario.kind, scenario.name
    logger.info("running scenario %s (%s)", name, type(kind).__name__)
    if isinstance(kind, CeeBaseline):
        return [run_cee_baseline(scenario.base_pop, scenario.sim, name)]
    if isinstance(kind, Diversion):
        return [
            run_diversion(
                scenario.base_pop,
                scenario.sim,
                kind.keep_fraction,
                kind.subsidy,
                kind.rank_by,
                name,
            )
        ]
    if isinstance(kind, BetaReduction):
        return list(
            run_beta_reduction(
                scenario.base_pop,
                kind.wages,
                kind.beta_before,
                kind.beta_after,
                kind.s_cut,
                kind.wage_p,
                name,
            )
        )
    return [run_exam_redesign(scenario.base_pop, scenario.sim, kind.aptitude_weight, name)]


class FindingKind(str, Enum):
    DOMINATES = "dominates"
    DILEMMA = "dilemma"


@dataclass(frozen=True)
class Finding:
    """Relation between two reports on (welfare_mean, participation_share).

    DOMINATES: ``first`` is at least as good on both and better on one.
    DILEMMA: ``first`` wins on welfare while ``second`` wins on participation.
    """

    kind: FindingKind
    first: str
    second: str
    welfare_diff: float
    participation_diff: float


@dataclass(frozen=True)
class TradeoffTable:
    rows: tuple[PolicyReport, ...]
    findings: tuple[Finding, ...]


def _compare(a: PolicyReport, b: PolicyReport) -> Finding | None:
    dw = a.welfare_mean - b.welfare_mean
    dp = a.equity.participation_share - b.equity.participation_share
    if dw == 0 and dp == 0:
        return None
    if dw >= 0 and dp >= 0:
        return Finding(FindingKind.DOMINATES, a.scenario, b.scenario, dw, dp)
    if dw <= 0 and dp <= 0:
        return Finding(FindingKind.DOMINATES, b.scenario, a.scenario, -dw, -dp)
    if dw > 0:
        return Finding(FindingKind.DILEMMA, a.scenario, b.scenario, dw, dp)
    return Finding(FindingKind.DILEMMA, b.scenario, a.scenario, -dw, -dp)


def compare_policies(reports: Sequence[PolicyReport]) -> TradeoffTable:
    """Side-by-side welfare/equity table with pairwise dominance and dilemma flags.

    Rows are sorted by scenario name, so the result does not depend on input order.

    Raises:
        InvalidParameterError: If fewer than two reports are given.
    """
    if len(reports) < 2:
        raise InvalidParameterError("compare_policies needs at least two reports")
    rows = tuple(
        sorted(
            reports,
            key=lambda r: (r.scenario, r.welfare_mean, r.equity.participation_share),
        )
    )
    findings = tuple(
        finding for a, b in combinations(rows, 2) if (finding := _compare(a, b)) is not None
    )
    return TradeoffTable(rows=rows, findings=findings)
