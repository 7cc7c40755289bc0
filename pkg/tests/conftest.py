"""Pytest configuration and shared fixtures for arms-race tests."""

import pytest

from arms_race import presets
from arms_race.core import FamilyParams, ThresholdSpec
from arms_race.dynamics import SimConfig
from arms_race.equilibrium import TwoFamilySetup
from arms_race.population import Explicit, Normal, PopulationSpec


@pytest.fixture
def unequal_setup() -> TwoFamilySetup:
    """Two families with aptitudes 5 and 4."""
    return presets.UNEQUAL_APTITUDE


@pytest.fixture
def equal_setup() -> TwoFamilySetup:
    """Two families with aptitude 5 each."""
    return presets.EQUAL_APTITUDE


@pytest.fixture
def figure1_family() -> FamilyParams:
    return FamilyParams("focal", gamma=3.0, p=0.5)


@pytest.fixture
def normal_population() -> PopulationSpec:
    """100 families, aptitude Normal(3, 1), P = 0.5."""
    return PopulationSpec(n=100, gamma_dist=Normal(3.0, 1.0), seed=11)


@pytest.fixture
def homogeneous_population() -> PopulationSpec:
    """Ten identical families with gamma 3 and P 0.5."""
    return PopulationSpec(n=10, gamma_dist=Explicit((3.0,)), seed=0)


@pytest.fixture
def open_ended_sim() -> SimConfig:
    """Caps high enough that no response is clamped within 50 rounds."""
    return SimConfig(
        threshold=ThresholdSpec.mean_plus_k_sigma(1.645),
        rounds_max=50,
        t_hard_cap=1e6,
        divergence_cap=1e12,
    )
