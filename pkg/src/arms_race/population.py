"""Family populations: parameter distributions and seeded sampling.

Sampling is reproducible across platforms. The root ``SeedSequence(seed)`` is
spawned into one child stream per family; family i draws its aptitude first
and its cost coefficient second from a ``PCG64`` generator on child i. A
family's parameters therefore depend only on (seed, i), not on n.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from arms_race.core import FamilyParams, Rationality
from arms_race.exceptions import InvalidParameterError
from arms_race.validation import validate_finite, validate_positive

MAX_REDRAWS = 1000


@dataclass(frozen=True)
class Uniform:
    """Uniform on [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        validate_positive(self.lo, "lo")
        validate_finite(self.hi, "hi")
        if self.hi < self.lo:
            raise InvalidParameterError(f"hi ({self.hi}) must be >= lo ({self.lo})")

    def draw(self, rng: np.random.Generator, index: int) -> float:
        return float(rng.uniform(self.lo, self.hi))


@dataclass(frozen=True)
class Normal:
    """Normal(mean, sd) redrawn until the value exceeds ``minimum`` (> 0)."""

    mean: float
    sd: float
    minimum: float = 1e-6

    def __post_init__(self) -> None:
        validate_finite(self.mean, "mean")
        validate_finite(self.sd, "sd")
        if self.sd < 0:
            raise InvalidParameterError(f"sd must be >= 0, got {self.sd}")
        validate_positive(self.minimum, "minimum")
        if self.sd == 0 and self.mean <= self.minimum:
            raise InvalidParameterError("degenerate normal lies below its truncation point")

    def draw(self, rng: np.random.Generator, index: int) -> float:
        for _ in range(MAX_REDRAWS):
            value = float(rng.normal(self.mean, self.sd))
            if value > self.minimum:
                return value
        raise InvalidParameterError(
            f"normal({self.mean}, {self.sd}) rarely exceeds {self.minimum}; "
            f"gave up after {MAX_REDRAWS} draws"
        )


@dataclass(frozen=True)
class LogNormal:
    """exp(Normal(mu, sigma)); always positive."""

    mu: float
    sigma: float

    def __post_init__(self) -> None:
        validate_finite(self.mu, "mu")
        validate_finite(self.sigma, "sigma")
        if self.sigma < 0:
            raise InvalidParameterError(f"sigma must be >= 0, got {self.sigma}")

    def draw(self, rng: np.random.Generator, index: int) -> float:
        return float(rng.lognormal(self.mu, self.sigma))


@dataclass(frozen=True)
class Explicit:
    """Listed values; a single value is shared by every family."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise InvalidParameterError("explicit distribution needs at least one value")
        for value in self.values:
            validate_positive(value, "explicit value")

    def draw(self, rng: np.random.Generator, index: int) -> float:
        if len(self.values) == 1:
            return self.values[0]
        return self.values[index]


Distribution = Uniform | Normal | LogNormal | Explicit


@dataclass(frozen=True, eq=False)
class Population:
    """Sampled families as parallel arrays, in family order."""

    ids: tuple[str, ...]
    gamma: NDArray[np.float64]
    p: NDArray[np.float64]
    rational: NDArray[np.bool_]

    def __len__(self) -> int:
        return len(self.ids)

    @classmethod
    def from_families(cls, families: Sequence[FamilyParams]) -> Population:
        return cls(
            ids=tuple(f.id for f in families),
            gamma=np.array([f.gamma for f in families], dtype=float),
            p=np.array([f.p for f in families], dtype=float),
            rational=np.array([f.rationality is Rationality.RATIONAL for f in families]),
        )

    def families(self) -> list[FamilyParams]:
        return [
            FamilyParams(
                id=fid,
                gamma=float(g),
                p=float(p),
                rationality=Rationality.RATIONAL if r else Rationality.BOUNDED,
            )
            for fid, g, p, r in zip(self.ids, self.gamma, self.p, self.rational)
        ]

    def subset(self, indices: Sequence[int]) -> Population:
        """Families at the given indices, in the order given."""
        idx = np.asarray(indices, dtype=int)
        return Population(
            ids=tuple(self.ids[i] for i in idx),
            gamma=self.gamma[idx],
            p=self.p[idx],
            rational=self.rational[idx],
        )

    def with_gamma(self, gamma: NDArray[np.float64]) -> Population:
        return Population(ids=self.ids, gamma=gamma, p=self.p, rational=self.rational)

    @property
    def gamma_over_p(self) -> NDArray[np.float64]:
        return self.gamma / self.p


@dataclass(frozen=True)
class PopulationSpec:
    """How to generate a population of n families.

    Attributes:
        n: Number of families (>= 2).
        gamma_dist: Aptitude distribution.
        p_dist: Cost-coefficient distribution (default: 0.5 for everyone).
        rationality: Rationality mode shared by all families.
        seed: Root seed for the per-family streams.
    """

    n: int
    gamma_dist: Distribution
    p_dist: Distribution = field(default_factory=lambda: Explicit((0.5,)))
    rationality: Rationality = Rationality.BOUNDED
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidParameterError(f"a population needs n >= 2 families, got {self.n}")
        if self.seed < 0:
            raise InvalidParameterError(f"seed must be >= 0, got {self.seed}")
        for name, dist in (("gamma_dist", self.gamma_dist), ("p_dist", self.p_dist)):
            if isinstance(dist, Explicit) and len(dist.values) not in (1, self.n):
                raise InvalidParameterError(
                    f"{name} lists {len(dist.values)} values for {self.n} families"
                )

    def sample(self) -> Population:
        """Draw the population deterministically from the seed."""
        children = np.random.SeedSequence(self.seed).spawn(self.n)
        gamma = np.empty(self.n)
        p = np.empty(self.n)
        for i, child in enumerate(children):
            rng = np.random.Generator(np.random.PCG64(child))
            gamma[i] = self.gamma_dist.draw(rng, i)
            p[i] = self.p_dist.draw(rng, i)
        rational = np.full(self.n, self.rationality is Rationality.RATIONAL)
        ids = tuple(f"f{i:04d}" for i in range(self.n))
        return Population(ids=ids, gamma=gamma, p=p, rational=rational)
