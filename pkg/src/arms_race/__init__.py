"""Game-theoretic model of positional education competition.

Families choose study time to clear a threshold set by everyone's scores;
best responses raise the threshold, which raises best responses again.
The package covers the two-family obey/disobey game, the N-family feedback
simulation, a wage-signaling extension and policy scenario comparisons.
"""

from arms_race.core import (
    FamilyParams,
    Rationality,
    ThresholdMode,
    ThresholdSpec,
    UtilityOutcome,
    threshold,
    utility,
)
from arms_race.dynamics import (
    SimConfig,
    SimStatus,
    SimTrace,
    best_response_population,
    decide_effort,
    max_noncompetitive_time,
    simulate_feedback,
    welfare_report,
)
from arms_race.equilibrium import (
    TwoFamilySetup,
    best_response_dynamics,
    best_response_numeric_oracle,
    best_response_two_family,
    escalation_rate,
    marginal_utility_two_family,
)
from arms_race.exceptions import (
    ArmsRaceError,
    ConfigError,
    DegeneratePoolError,
    DomainError,
    EmptyPopulationError,
    InvalidParameterError,
)
from arms_race.game import (
    Action,
    DivergentCell,
    FiniteCell,
    ObeyDisobeyGame,
    analyze_dominance,
    build_obey_disobey_game,
)
from arms_race.policy import (
    PolicyReport,
    PolicyScenario,
    compare_policies,
    run_beta_reduction,
    run_cee_baseline,
    run_diversion,
    run_exam_redesign,
)
from arms_race.population import PopulationSpec
from arms_race.signaling import (
    WageModel,
    beta_sensitivity,
    decide_participation,
    signaling_cost_to_threshold,
    utility_signaling,
)

__version__ = "0.1.0"

__all__ = [
    # Core model
    "FamilyParams",
    "Rationality",
    "ThresholdMode",
    "ThresholdSpec",
    "UtilityOutcome",
    "utility",
    "threshold",
    # Two-family equilibrium
    "TwoFamilySetup",
    "best_response_two_family",
    "best_response_numeric_oracle",
    "marginal_utility_two_family",
    "best_response_dynamics",
    "escalation_rate",
    "Action",
    "FiniteCell",
    "DivergentCell",
    "ObeyDisobeyGame",
    "build_obey_disobey_game",
    "analyze_dominance",
    # Population dynamics
    "PopulationSpec",
    "SimConfig",
    "SimStatus",
    "SimTrace",
    "best_response_population",
    "max_noncompetitive_time",
    "decide_effort",
    "simulate_feedback",
    "welfare_report",
    # Signaling
    "WageModel",
    "signaling_cost_to_threshold",
    "decide_participation",
    "utility_signaling",
    "beta_sensitivity",
    # Policy lab
    "PolicyScenario",
    "PolicyReport",
    "run_cee_baseline",
    "run_diversion",
    "run_beta_reduction",
    "run_exam_redesign",
    "compare_policies",
    # Exceptions
    "ArmsRaceError",
    "InvalidParameterError",
    "DomainError",
    "EmptyPopulationError",
    "DegeneratePoolError",
    "ConfigError",
    # Version
    "__version__",
]
