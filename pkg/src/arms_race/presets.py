"""Published parameterizations, ready to run.

Each preset reproduces one of the reference tables or figures; the
``PUBLISHED_*`` mappings hold the rounded values those tables print so
emitters can place them next to the computed numbers.
"""

from arms_race.core import FamilyParams, ThresholdSpec
from arms_race.dynamics import SimConfig
from arms_race.equilibrium import TwoFamilySetup
from arms_race.game import Action
from arms_race.policy import BetaReduction, CeeBaseline, Diversion, ExamRedesign, PolicyScenario
from arms_race.population import Explicit, Normal, PopulationSpec
from arms_race.signaling import WageModel

O, D = Action.OBEY, Action.DISOBEY

# Two families, unequal aptitude: family 1 is stronger
UNEQUAL_APTITUDE = TwoFamilySetup(
    fam1=FamilyParams("family_1", gamma=5.0, p=0.5),
    fam2=FamilyParams("family_2", gamma=4.0, p=0.5),
    t_obey=2.0,
)

EQUAL_APTITUDE = TwoFamilySetup(
    fam1=FamilyParams("family_1", gamma=5.0, p=0.5),
    fam2=FamilyParams("family_2", gamma=5.0, p=0.5),
    t_obey=2.0,
)

PUBLISHED_UNEQUAL: dict[tuple[Action, Action], tuple[float, float]] = {
    (O, O): (0.1, -1.0),
    (D, O): (0.21, -1.0),
    (O, D): (-1.0, -0.36),
}

PUBLISHED_EQUAL: dict[tuple[Action, Action], tuple[float, float]] = {
    (O, O): (-0.3, -0.3),
    (D, O): (0.01, -1.0),
    (O, D): (-1.0, 0.01),
}

PUBLISHED_BEST_WELFARE = {"unequal": -0.79, "equal": -0.6}

LOG4_NOTE = (
    "the published equal-aptitude table prints a finite both-disobey entry built from ln 4; "
    "here mutual best responses escalate by 2.4 h per round-trip, so the cell is divergent"
)

# Single family facing a rising threshold
FIGURE1_GAMMA = 3.0
FIGURE1_P = 0.5
FIGURE1_S_CUTS: tuple[float, ...] = (0.0, 3.0)
FIGURE1_T_MAX = 6.0
FIGURE1_STEP = 0.01
PUBLISHED_FIGURE1 = {0.0: (1.33, 1.13), 3.0: (2.33, 0.64)}

# Focal student (gamma 5) against populations with mean aptitude 3 and mean study time 2
FIGURE2_GAMMA = 5.0
FIGURE2_P = 0.5
FIGURE2_MEAN_SCORE = 6.0
FIGURE2_K = 1.645
FIGURE2_SIGMAS: tuple[float, ...] = (1.0, 3.0)
FIGURE2_T_MAX = 6.0
FIGURE2_STEP = 0.01
PUBLISHED_FIGURE2 = {1.0: 7.64, 3.0: 10.94}

# Wage signaling: wage_p and gamma chosen so the study costs come out at 1500 and 800
SIGNALING_WAGES = WageModel(w_high=2000.0, w_low=1000.0)
SIGNALING_S_CUT = 120.0
SIGNALING_WAGE_P = 100.0
SIGNALING_FAMILIES = (
    FamilyParams("family_1", gamma=8.0, p=0.5),
    FamilyParams("family_2", gamma=15.0, p=0.5),
)
PUBLISHED_SIGNALING_COSTS = (1500.0, 800.0)

SIMULATION_POPULATION = PopulationSpec(n=100, gamma_dist=Normal(mean=3.0, sd=1.0), seed=0)
SIMULATION_CONFIG = SimConfig(threshold=ThresholdSpec.mean_plus_k_sigma(1.645), rounds_max=50)

POLICY_POPULATION = PopulationSpec(n=100, gamma_dist=Normal(mean=3.0, sd=1.0), seed=0)
POLICY_SIM = SimConfig(threshold=ThresholdSpec.mean_plus_k_sigma(1.645), rounds_max=10)
SIGNALING_POPULATION = PopulationSpec(
    n=2, gamma_dist=Explicit(tuple(f.gamma for f in SIGNALING_FAMILIES)), seed=0
)

POLICY_BATCH: tuple[PolicyScenario, ...] = (
    PolicyScenario("cee_baseline", CeeBaseline(), POLICY_POPULATION, POLICY_SIM),
    PolicyScenario("diversion_50", Diversion(keep_fraction=0.5), POLICY_POPULATION, POLICY_SIM),
    PolicyScenario(
        "beta_reduction",
        BetaReduction(
            wages=SIGNALING_WAGES,
            beta_before=10.0,
            beta_after=1.0,
            s_cut=SIGNALING_S_CUT,
            wage_p=SIGNALING_WAGE_P,
        ),
        SIGNALING_POPULATION,
        POLICY_SIM,
    ),
    PolicyScenario(
        "exam_redesign", ExamRedesign(aptitude_weight=1.5), POLICY_POPULATION, POLICY_SIM
    ),
)
