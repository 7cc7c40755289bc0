"""Tests for population distributions and seeded sampling."""

import numpy as np
import pytest

from arms_race.core import FamilyParams, Rationality
from arms_race.exceptions import InvalidParameterError
from arms_race.population import (
    Explicit,
    LogNormal,
    Normal,
    Population,
    PopulationSpec,
    Uniform,
)


class TestDistributions:
    """Tests for distribution validation."""

    def test_should_reject_inverted_uniform(self) -> None:
        """hi below lo is invalid."""
        with pytest.raises(InvalidParameterError):
            Uniform(3.0, 1.0)

    def test_should_reject_negative_sd(self) -> None:
        """Standard deviations are non-negative."""
        with pytest.raises(InvalidParameterError):
            Normal(3.0, -1.0)

    def test_should_reject_empty_explicit(self) -> None:
        with pytest.raises(InvalidParameterError):
            Explicit(())

    def test_should_reject_non_positive_explicit_value(self) -> None:
        """Aptitudes and costs are strictly positive."""
        with pytest.raises(InvalidParameterError):
            Explicit((1.0, 0.0))

    def test_should_truncate_normal_above_minimum(self) -> None:
        """Draws below the truncation point are redrawn."""
        pop = PopulationSpec(n=500, gamma_dist=Normal(0.5, 1.0), seed=3).sample()
        assert np.all(pop.gamma > 1e-6)

    def test_should_draw_positive_lognormal(self) -> None:
        pop = PopulationSpec(n=50, gamma_dist=LogNormal(0.0, 1.0), seed=1).sample()
        assert np.all(pop.gamma > 0)


class TestPopulationSpec:
    """Tests for PopulationSpec."""

    def test_should_require_two_families(self) -> None:
        """n = 1 is not a competition."""
        with pytest.raises(InvalidParameterError, match="n >= 2"):
            PopulationSpec(n=1, gamma_dist=Explicit((3.0,)))

    def test_should_reject_explicit_length_mismatch(self) -> None:
        """Explicit lists hold one value or one per family."""
        with pytest.raises(InvalidParameterError, match="lists 3 values"):
            PopulationSpec(n=4, gamma_dist=Explicit((1.0, 2.0, 3.0)))

    def test_should_reject_negative_seed(self) -> None:
        with pytest.raises(InvalidParameterError):
            PopulationSpec(n=2, gamma_dist=Explicit((3.0,)), seed=-1)

    def test_should_be_deterministic(self, normal_population: PopulationSpec) -> None:
        """Same seed, same families."""
        first, second = normal_population.sample(), normal_population.sample()
        np.testing.assert_array_equal(first.gamma, second.gamma)
        np.testing.assert_array_equal(first.p, second.p)
        assert first.ids == second.ids

    def test_should_depend_on_seed(self) -> None:
        a = PopulationSpec(n=20, gamma_dist=Normal(3.0, 1.0), seed=1).sample()
        b = PopulationSpec(n=20, gamma_dist=Normal(3.0, 1.0), seed=2).sample()
        assert not np.array_equal(a.gamma, b.gamma)

    def test_should_keep_family_draws_independent_of_n(self) -> None:
        """Family i's parameters depend on (seed, i) only."""
        small = PopulationSpec(n=5, gamma_dist=Normal(3.0, 1.0), seed=7).sample()
        large = PopulationSpec(n=12, gamma_dist=Normal(3.0, 1.0), seed=7).sample()
        np.testing.assert_array_equal(small.gamma, large.gamma[:5])

    def test_should_default_cost_to_one_half(self, normal_population: PopulationSpec) -> None:
        pop = normal_population.sample()
        np.testing.assert_array_equal(pop.p, np.full(100, 0.5))

    def test_should_assign_explicit_values_in_order(self) -> None:
        """Explicit values land on families by index."""
        pop = PopulationSpec(n=3, gamma_dist=Explicit((4.0, 5.0, 6.0))).sample()
        np.testing.assert_array_equal(pop.gamma, [4.0, 5.0, 6.0])
        assert pop.ids == ("f0000", "f0001", "f0002")

    def test_should_apply_rationality_to_everyone(self) -> None:
        spec = PopulationSpec(
            n=4, gamma_dist=Explicit((3.0,)), rationality=Rationality.RATIONAL
        )
        assert spec.sample().rational.all()

    def test_should_match_normal_moments_roughly(self) -> None:
        """Large samples sit near Normal(3, 1)."""
        pop = PopulationSpec(n=5000, gamma_dist=Normal(3.0, 1.0), seed=0).sample()
        assert pop.gamma.mean() == pytest.approx(3.0, abs=0.1)
        assert pop.gamma.std() == pytest.approx(1.0, abs=0.1)


class TestPopulation:
    """Tests for Population helpers."""

    @pytest.fixture
    def population(self) -> Population:
        return Population.from_families(
            [
                FamilyParams("a", 2.0, 0.5),
                FamilyParams("b", 4.0, 1.0, Rationality.RATIONAL),
                FamilyParams("c", 6.0, 0.5),
            ]
        )

    def test_should_round_trip_families(self, population: Population) -> None:
        """from_families and families() agree."""
        families = population.families()
        assert [f.id for f in families] == ["a", "b", "c"]
        assert families[1].rationality is Rationality.RATIONAL
        assert families[2].gamma == 6.0

    def test_should_subset_in_given_order(self, population: Population) -> None:
        sub = population.subset([2, 0])
        assert sub.ids == ("c", "a")
        np.testing.assert_array_equal(sub.gamma, [6.0, 2.0])
        assert len(sub) == 2

    def test_should_replace_gamma(self, population: Population) -> None:
        """with_gamma keeps ids and costs."""
        scaled = population.with_gamma(population.gamma * 2)
        np.testing.assert_array_equal(scaled.gamma, [4.0, 8.0, 12.0])
        assert scaled.ids == population.ids
        np.testing.assert_array_equal(scaled.p, population.p)

    def test_should_compute_gamma_over_p(self, population: Population) -> None:
        np.testing.assert_array_equal(population.gamma_over_p, [4.0, 4.0, 12.0])
