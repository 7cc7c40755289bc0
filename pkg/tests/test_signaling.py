"""Tests for the wage-signaling extension."""

import math

import pytest

from arms_race import presets
from arms_race.core import FamilyParams
from arms_race.exceptions import InvalidParameterError
from arms_race.signaling import (
    Choice,
    WageModel,
    beta_sensitivity,
    decide_participation,
    signaling_cost_to_threshold,
    signaling_decision_table,
    utility_signaling,
)

WAGES = presets.SIGNALING_WAGES


class TestWageModel:
    """Tests for WageModel validation."""

    def test_should_require_credential_premium(self) -> None:
        """w_high must exceed w_low."""
        with pytest.raises(InvalidParameterError):
            WageModel(w_high=1000.0, w_low=1000.0)

    def test_should_reject_non_positive_beta(self) -> None:
        with pytest.raises(InvalidParameterError):
            WageModel(w_high=2000.0, w_low=1000.0, beta=0.0)

    def test_should_copy_with_new_beta(self) -> None:
        biased = WAGES.with_beta(10.0)
        assert biased.beta == 10.0
        assert biased.w_high == WAGES.w_high
        assert WAGES.beta == 1.0


class TestSignalingCost:
    """Tests for signaling_cost_to_threshold."""

    def test_should_reproduce_example_costs(self) -> None:
        """Families with gamma 8 and 15 pay 1500 and 800."""
        costs = tuple(
            signaling_cost_to_threshold(fam, presets.SIGNALING_S_CUT, presets.SIGNALING_WAGE_P)
            for fam in presets.SIGNALING_FAMILIES
        )
        assert costs == pytest.approx(presets.PUBLISHED_SIGNALING_COSTS)

    def test_should_reject_negative_threshold(self) -> None:
        with pytest.raises(InvalidParameterError):
            signaling_cost_to_threshold(FamilyParams("a", 5.0, 0.5), -1.0, 100.0)

    def test_should_reject_non_positive_wage_rate(self) -> None:
        with pytest.raises(InvalidParameterError):
            signaling_cost_to_threshold(FamilyParams("a", 5.0, 0.5), 10.0, 0.0)


class TestDecideParticipation:
    """Tests for decide_participation."""

    def test_should_quit_when_signal_costs_too_much(self) -> None:
        """Cost 1500: 2000 - 1500 < 1000."""
        decision = decide_participation(1500.0, WAGES)
        assert decision.choice is Choice.QUIT
        assert decision.payoff == 1000.0
        assert decision.alternative_payoff == 500.0
        assert decision.t_needed == 0.0

    def test_should_study_when_signal_pays(self) -> None:
        """Cost 800: 2000 - 800 > 1000."""
        decision = decide_participation(800.0, WAGES, t_needed=8.0)
        assert decision.choice is Choice.STUDY
        assert decision.payoff == 1200.0
        assert decision.t_needed == 8.0

    def test_should_break_ties_toward_quitting(self) -> None:
        """Net credential wage equal to w_low is not worth the effort."""
        assert decide_participation(1000.0, WAGES).choice is Choice.QUIT

    def test_should_study_under_bias_but_pay_unbiased(self) -> None:
        """beta = 10 pulls the 1500-cost family in; it realizes 500."""
        decision = decide_participation(1500.0, WAGES.with_beta(10.0), use_bias=True)
        assert decision.choice is Choice.STUDY
        assert decision.payoff == 500.0
        assert decision.payoff < decision.alternative_payoff

    def test_should_ignore_beta_without_use_bias(self) -> None:
        assert decide_participation(1500.0, WAGES.with_beta(10.0)).choice is Choice.QUIT

    def test_should_reject_negative_cost(self) -> None:
        with pytest.raises(InvalidParameterError):
            decide_participation(-1.0, WAGES)


class TestUtilitySignaling:
    """Tests for utility_signaling."""

    def test_should_weight_log_payoff_by_wage(self) -> None:
        """gamma 5, t 2, S_cut 9: 2000 ln 3 - 500."""
        fam = FamilyParams("a", 5.0, 0.5)
        value = utility_signaling(fam, 2.0, 9.0, WAGES, wage_p=250.0)
        assert value == pytest.approx(2000 * math.log(3) - 500)
        assert value == pytest.approx(1697.2, abs=0.1)

    def test_should_pay_low_wage_on_failure(self) -> None:
        fam = FamilyParams("a", 5.0, 0.5)
        assert utility_signaling(fam, 1.0, 9.0, WAGES, wage_p=250.0) == 750.0


class TestDecisionTable:
    """Tests for signaling_decision_table."""

    def test_should_split_example_families(self) -> None:
        """The weaker family takes w_low; the stronger one buys the signal."""
        rows = signaling_decision_table(
            presets.SIGNALING_FAMILIES,
            presets.SIGNALING_S_CUT,
            WAGES,
            presets.SIGNALING_WAGE_P,
        )
        assert [row.choice for row in rows] == [Choice.QUIT, Choice.STUDY]
        assert rows[0].study_payoff == 500.0
        assert rows[1].t_needed == 8.0
        assert all(row.quit_payoff == 1000.0 for row in rows)


class TestBetaSensitivity:
    """Tests for beta_sensitivity."""

    @pytest.fixture
    def summaries(self):
        return beta_sensitivity(
            presets.SIGNALING_FAMILIES,
            WAGES,
            presets.SIGNALING_S_CUT,
            (1.0, 2.0, 5.0, 10.0, 20.0),
            presets.SIGNALING_WAGE_P,
        )

    def test_should_raise_participation_with_beta(self, summaries) -> None:
        rates = [s.participation_rate for s in summaries]
        assert rates[0] == 0.5
        assert rates[-1] == 1.0
        assert all(b >= a for a, b in zip(rates, rates[1:]))

    def test_should_lower_realized_payoff_under_bias(self, summaries) -> None:
        """Biased entrants realize 500 instead of 1000."""
        assert summaries[0].mean_payoff == pytest.approx(1100.0)
        assert summaries[-1].mean_payoff == pytest.approx(850.0)

    def test_should_widen_pool_as_weaker_families_enter(self, summaries) -> None:
        """One participant has no spread; two span gamma/P 16 to 30."""
        assert summaries[0].pool_dispersion == 0.0
        assert summaries[-1].pool_dispersion == pytest.approx(7.0)

    def test_should_average_committed_effort(self, summaries) -> None:
        assert summaries[0].mean_effort == pytest.approx(4.0)
        assert summaries[-1].mean_effort == pytest.approx(11.5)

    def test_should_accept_population_spec(self, summaries) -> None:
        """A sampled spec matches the equivalent family list."""
        from_spec = beta_sensitivity(
            presets.SIGNALING_POPULATION,
            WAGES,
            presets.SIGNALING_S_CUT,
            (1.0, 2.0, 5.0, 10.0, 20.0),
            presets.SIGNALING_WAGE_P,
        )
        assert [s.participation_rate for s in from_spec] == [
            s.participation_rate for s in summaries
        ]

    def test_should_reject_empty_grid(self) -> None:
        with pytest.raises(InvalidParameterError):
            beta_sensitivity(presets.SIGNALING_FAMILIES, WAGES, 120.0, ())

    def test_should_reject_non_positive_beta(self) -> None:
        with pytest.raises(InvalidParameterError):
            beta_sensitivity(presets.SIGNALING_FAMILIES, WAGES, 120.0, (1.0, -2.0))
