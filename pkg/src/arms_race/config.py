"""JSON run configuration with strict pydantic validation.

Every block mirrors a domain type and converts to it with ``to_domain()``.
Blocks run that conversion while validating, so a violated domain invariant
is reported with the path of the offending block. Unknown keys are rejected
everywhere.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PositiveFloat,
    ValidationError,
    model_validator,
)

from arms_race import presets
from arms_race.core import FamilyParams, Rationality, ThresholdMode, ThresholdSpec
from arms_race.dynamics import DEFAULT_DIVERGENCE_CAP, SimConfig
from arms_race.emitters import OutputFormat
from arms_race.equilibrium import TwoFamilySetup, UpdateScheme
from arms_race.exceptions import ConfigError
from arms_race.policy import (
    BetaReduction,
    CeeBaseline,
    Diversion,
    ExamRedesign,
    PolicyScenario,
    RankBy,
    ScenarioKind,
)
from arms_race.population import (
    Distribution,
    Explicit,
    LogNormal,
    Normal,
    PopulationSpec,
    Uniform,
)
from arms_race.signaling import DEFAULT_BETA_GRID, WageModel
from arms_race.validation import DEFAULT_T_HARD_CAP


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class _DomainChecked(_Strict):
    """Blocks whose domain conversion runs at validation time."""

    @model_validator(mode="after")
    def _check_domain(self):
        self.to_domain()
        return self

    def to_domain(self) -> object:  # pragma: no cover - overridden
        raise NotImplementedError


class FamilyModel(_DomainChecked):
    id: str
    gamma: float = Field(gt=0)
    p: float = Field(gt=0)
    rationality: Rationality = Rationality.BOUNDED

    def to_domain(self) -> FamilyParams:
        return FamilyParams(self.id, self.gamma, self.p, self.rationality)

    @classmethod
    def from_domain(cls, fam: FamilyParams) -> FamilyModel:
        return cls(id=fam.id, gamma=fam.gamma, p=fam.p, rationality=fam.rationality)


class GameBlock(_DomainChecked):
    fam1: FamilyModel
    fam2: FamilyModel
    t_obey: float
    t_hard_cap: float = DEFAULT_T_HARD_CAP
    dynamics_rounds: int = Field(default=10, ge=1)
    scheme: UpdateScheme = UpdateScheme.SIMULTANEOUS

    def to_domain(self) -> TwoFamilySetup:
        return TwoFamilySetup(
            self.fam1.to_domain(), self.fam2.to_domain(), self.t_obey, self.t_hard_cap
        )


class UniformModel(_DomainChecked):
    kind: Literal["uniform"] = "uniform"
    lo: float
    hi: float

    def to_domain(self) -> Uniform:
        return Uniform(self.lo, self.hi)


class NormalModel(_DomainChecked):
    kind: Literal["normal"] = "normal"
    mean: float
    sd: float
    minimum: float = 1e-6

    def to_domain(self) -> Normal:
        return Normal(self.mean, self.sd, self.minimum)


class LogNormalModel(_DomainChecked):
    kind: Literal["lognormal"] = "lognormal"
    mu: float
    sigma: float

    def to_domain(self) -> LogNormal:
        return LogNormal(self.mu, self.sigma)


class ExplicitModel(_DomainChecked):
    kind: Literal["explicit"] = "explicit"
    values: list[float] = Field(min_length=1)

    def to_domain(self) -> Explicit:
        return Explicit(tuple(self.values))


DistributionModel = Annotated[
    UniformModel | NormalModel | LogNormalModel | ExplicitModel, Field(discriminator="kind")
]


def _distribution_model(dist: Distribution) -> DistributionModel:
    if isinstance(dist, Uniform):
        return UniformModel(lo=dist.lo, hi=dist.hi)
    if isinstance(dist, Normal):
        return NormalModel(mean=dist.mean, sd=dist.sd, minimum=dist.minimum)
    if isinstance(dist, LogNormal):
        return LogNormalModel(mu=dist.mu, sigma=dist.sigma)
    return ExplicitModel(values=list(dist.values))


class PopulationModel(_DomainChecked):
    n: int
    gamma_dist: DistributionModel
    p_dist: DistributionModel = Field(default_factory=lambda: ExplicitModel(values=[0.5]))
    rationality: Rationality = Rationality.BOUNDED
    seed: int = 0

    def to_domain(self, seed: int | None = None) -> PopulationSpec:
        return PopulationSpec(
            n=self.n,
            gamma_dist=self.gamma_dist.to_domain(),
            p_dist=self.p_dist.to_domain(),
            rationality=self.rationality,
            seed=self.seed if seed is None else seed,
        )

    @classmethod
    def from_domain(cls, spec: PopulationSpec) -> PopulationModel:
        return cls(
            n=spec.n,
            gamma_dist=_distribution_model(spec.gamma_dist),
            p_dist=_distribution_model(spec.p_dist),
            rationality=spec.rationality,
            seed=spec.seed,
        )


class FixedThresholdModel(_Strict):
    mode: Literal["fixed"] = "fixed"
    s_cut: float


class KSigmaThresholdModel(_Strict):
    mode: Literal["mean_plus_k_sigma"] = "mean_plus_k_sigma"
    k: float


ThresholdModel = Annotated[
    FixedThresholdModel | KSigmaThresholdModel, Field(discriminator="mode")
]


class SimModel(_DomainChecked):
    threshold: ThresholdModel
    initial_effort: float = 2.0
    rounds_max: int = 50
    divergence_cap: float = DEFAULT_DIVERGENCE_CAP
    quit_payoff: float = 0.0
    t_hard_cap: float = DEFAULT_T_HARD_CAP
    quitters_in_pool: bool = False

    def to_domain(self) -> SimConfig:
        if isinstance(self.threshold, FixedThresholdModel):
            spec = ThresholdSpec.fixed(self.threshold.s_cut)
        else:
            spec = ThresholdSpec.mean_plus_k_sigma(self.threshold.k)
        return SimConfig(
            threshold=spec,
            initial_effort=self.initial_effort,
            rounds_max=self.rounds_max,
            divergence_cap=self.divergence_cap,
            quit_payoff=self.quit_payoff,
            t_hard_cap=self.t_hard_cap,
            quitters_in_pool=self.quitters_in_pool,
        )

    @classmethod
    def from_domain(cls, cfg: SimConfig) -> SimModel:
        if cfg.threshold.mode is ThresholdMode.FIXED:
            threshold: ThresholdModel = FixedThresholdModel(s_cut=cfg.threshold.value)
        else:
            threshold = KSigmaThresholdModel(k=cfg.threshold.value)
        return cls(
            threshold=threshold,
            initial_effort=cfg.initial_effort,
            rounds_max=cfg.rounds_max,
            divergence_cap=cfg.divergence_cap,
            quit_payoff=cfg.quit_payoff,
            t_hard_cap=cfg.t_hard_cap,
            quitters_in_pool=cfg.quitters_in_pool,
        )


class SimulateBlock(_Strict):
    population: PopulationModel
    sim: SimModel


class Figure1Block(_Strict):
    gamma: float = Field(gt=0)
    p: float = Field(gt=0)
    s_cuts: list[float] = Field(min_length=1)
    t_max: float = Field(gt=0)
    step: float = Field(gt=0)


class Figure2Block(_Strict):
    gamma: float = Field(gt=0)
    p: float = Field(gt=0)
    mean_score: float
    k: float
    sigmas: list[NonNegativeFloat] = Field(min_length=1)
    t_max: float = Field(gt=0)
    step: float = Field(gt=0)


class WageModelModel(_DomainChecked):
    w_high: float
    w_low: float
    beta: float = 1.0

    def to_domain(self) -> WageModel:
        return WageModel(self.w_high, self.w_low, self.beta)


class Figure3Block(_Strict):
    families: list[FamilyModel] = Field(min_length=1)
    s_cut: float = Field(ge=0)
    wages: WageModelModel
    wage_p: float = Field(gt=0)
    beta_grid: list[PositiveFloat] = Field(
        default_factory=lambda: list(DEFAULT_BETA_GRID), min_length=1
    )


class CeeModel(_DomainChecked):
    kind: Literal["cee_baseline"] = "cee_baseline"

    def to_domain(self) -> CeeBaseline:
        return CeeBaseline()


class DiversionModel(_DomainChecked):
    kind: Literal["diversion"] = "diversion"
    keep_fraction: float
    subsidy: float = 0.0
    rank_by: RankBy = RankBy.INITIAL_SCORE

    def to_domain(self) -> Diversion:
        return Diversion(self.keep_fraction, self.subsidy, self.rank_by)


class BetaReductionModel(_DomainChecked):
    kind: Literal["beta_reduction"] = "beta_reduction"
    wages: WageModelModel
    beta_before: float
    beta_after: float
    s_cut: float
    wage_p: float = 100.0

    def to_domain(self) -> BetaReduction:
        return BetaReduction(
            self.wages.to_domain(), self.beta_before, self.beta_after, self.s_cut, self.wage_p
        )


class ExamRedesignModel(_DomainChecked):
    kind: Literal["exam_redesign"] = "exam_redesign"
    aptitude_weight: float

    def to_domain(self) -> ExamRedesign:
        return ExamRedesign(self.aptitude_weight)


PolicyKindModel = Annotated[
    CeeModel | DiversionModel | BetaReductionModel | ExamRedesignModel,
    Field(discriminator="kind"),
]


def _policy_kind_model(kind: ScenarioKind) -> PolicyKindModel:
    if isinstance(kind, Diversion):
        return DiversionModel(
            keep_fraction=kind.keep_fraction, subsidy=kind.subsidy, rank_by=kind.rank_by
        )
    if isinstance(kind, BetaReduction):
        wages = WageModelModel(w_high=kind.wages.w_high, w_low=kind.wages.w_low)
        return BetaReductionModel(
            wages=wages,
            beta_before=kind.beta_before,
            beta_after=kind.beta_after,
            s_cut=kind.s_cut,
            wage_p=kind.wage_p,
        )
    if isinstance(kind, ExamRedesign):
        return ExamRedesignModel(aptitude_weight=kind.aptitude_weight)
    return CeeModel()


class ScenarioModel(_Strict):
    name: str = Field(min_length=1)
    policy: PolicyKindModel
    population: PopulationModel
    sim: SimModel

    def to_domain(self, seed: int | None = None) -> PolicyScenario:
        return PolicyScenario(
            name=self.name,
            kind=self.policy.to_domain(),
            base_pop=self.population.to_domain(seed),
            sim=self.sim.to_domain(),
        )


class PolicyBlock(_Strict):
    scenarios: list[ScenarioModel] = Field(min_length=1)

    @model_validator(mode="after")
    def _unique_names(self):
        names = [s.name for s in self.scenarios]
        if len(set(names)) != len(names):
            raise ValueError(f"scenario names must be unique, got {names}")
        return self


class RunConfig(_Strict):
    """Top-level run configuration.

    ``seed`` overrides every population seed. A command whose block is absent
    runs the published parameterization.
    """

    seed: int | None = Field(default=None, ge=0)
    output_dir: str = "out"
    formats: list[OutputFormat] = Field(
        default_factory=lambda: [OutputFormat.CSV, OutputFormat.JSONL, OutputFormat.MD],
        min_length=1,
    )
    workers: int = Field(default=1, ge=1)
    game: GameBlock | None = None
    figure1: Figure1Block | None = None
    figure2: Figure2Block | None = None
    figure3: Figure3Block | None = None
    simulate: SimulateBlock | None = None
    policy: PolicyBlock | None = None

    def resolved(self, block: str) -> RunConfig:
        """Copy with ``block`` filled from the defaults when absent."""
        if getattr(self, block) is not None:
            return self
        return self.model_copy(update={block: getattr(default_config(), block)})

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


def default_config() -> RunConfig:
    """The complete default configuration (every block filled from presets)."""
    game = presets.UNEQUAL_APTITUDE
    return RunConfig(
        game=GameBlock(
            fam1=FamilyModel.from_domain(game.fam1),
            fam2=FamilyModel.from_domain(game.fam2),
            t_obey=game.t_obey,
            t_hard_cap=game.t_hard_cap,
        ),
        figure1=Figure1Block(
            gamma=presets.FIGURE1_GAMMA,
            p=presets.FIGURE1_P,
            s_cuts=list(presets.FIGURE1_S_CUTS),
            t_max=presets.FIGURE1_T_MAX,
            step=presets.FIGURE1_STEP,
        ),
        figure2=Figure2Block(
            gamma=presets.FIGURE2_GAMMA,
            p=presets.FIGURE2_P,
            mean_score=presets.FIGURE2_MEAN_SCORE,
            k=presets.FIGURE2_K,
            sigmas=list(presets.FIGURE2_SIGMAS),
            t_max=presets.FIGURE2_T_MAX,
            step=presets.FIGURE2_STEP,
        ),
        figure3=Figure3Block(
            families=[FamilyModel.from_domain(f) for f in presets.SIGNALING_FAMILIES],
            s_cut=presets.SIGNALING_S_CUT,
            wages=WageModelModel(
                w_high=presets.SIGNALING_WAGES.w_high, w_low=presets.SIGNALING_WAGES.w_low
            ),
            wage_p=presets.SIGNALING_WAGE_P,
        ),
        simulate=SimulateBlock(
            population=PopulationModel.from_domain(presets.SIMULATION_POPULATION),
            sim=SimModel.from_domain(presets.SIMULATION_CONFIG),
        ),
        policy=PolicyBlock(
            scenarios=[
                ScenarioModel(
                    name=s.name,
                    policy=_policy_kind_model(s.kind),
                    population=PopulationModel.from_domain(s.base_pop),
                    sim=SimModel.from_domain(s.sim),
                )
                for s in presets.POLICY_BATCH
            ]
        ),
    )


def format_validation_error(error: ValidationError) -> str:
    """One ``dotted.path: reason`` line per problem."""
    lines = []
    for err in error.errors():
        path = ".".join(str(part) for part in err["loc"]) or "<root>"
        lines.append(f"{path}: {err['msg']}")
    return "\n".join(lines)


def parse_config(data: dict[str, object] | str) -> RunConfig:
    """Validate a config given as a dict or JSON text.

    Raises:
        ConfigError: With one ``dotted.path: reason`` line per problem.
    """
    try:
        if isinstance(data, str):
            return RunConfig.model_validate_json(data)
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(format_validation_error(e)) from e


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a JSON config file.

    Raises:
        ConfigError: If the file is unreadable, not JSON, or fails validation.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} is not valid JSON: {e}") from e
    return parse_config(text)
