"""The two-family obey/disobey strategic game.

This module provides:
- FiniteCell / DivergentCell: payoff entries of the 2x2 game
- ObeyDisobeyGame: container indexed by (family 1 action, family 2 action)
- build_obey_disobey_game(): payoffs from a TwoFamilySetup
- analyze_dominance(): strict-improvement and pure Nash report

Each family either obeys (studies t_obey) or disobeys (plays its best
response to the other's choice). When both disobey, the mutual best response
generically has no finite solution; that cell keeps its payoffs as functions
of the opponent's effort instead of numbers.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from itertools import product

from arms_race.core import Effort, FamilyParams
from arms_race.equilibrium import (
    DynamicsStatus,
    TwoFamilySetup,
    UpdateScheme,
    best_response_dynamics,
    best_response_two_family,
    escalation_rate,
    interior_payoff_at_best_response,
    log_argument_at_best_response,
    two_family_utility,
)
from arms_race.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

_CONVERGENCE_ROUNDS = 10_000


class Action(str, Enum):
    """A family's choice with respect to the study-time policy."""

    OBEY = "obey"
    DISOBEY = "disobey"


ACTIONS: tuple[Action, Action] = (Action.OBEY, Action.DISOBEY)


@dataclass(frozen=True)
class FiniteCell:
    """A cell with numeric payoffs at a concrete effort profile."""

    u1: float
    u2: float
    profile: tuple[Effort, Effort]

    @property
    def welfare(self) -> float:
        return self.u1 + self.u2


@dataclass(frozen=True)
class DivergentCell:
    """A cell whose mutual best response escalates without bound.

    Attributes:
        escalation_rate: Hours added to t1 per best-response round-trip (> 0).
        u1_of_t2: Family 1's payoff when best-responding to t2.
        u2_of_t1: Family 2's payoff when best-responding to t1.
        form1: Closed form of u1_of_t2 on the interior branch.
        form2: Closed form of u2_of_t1 on the interior branch.
    """

    escalation_rate: float
    u1_of_t2: Callable[[float], float] = field(compare=False)
    u2_of_t1: Callable[[float], float] = field(compare=False)
    form1: str = ""
    form2: str = ""

    def __post_init__(self) -> None:
        if not self.escalation_rate > 0:
            raise InvalidParameterError(
                f"divergent cells need escalation_rate > 0, got {self.escalation_rate}"
            )


GameCell = FiniteCell | DivergentCell


class ObeyDisobeyGame:
    """A 2x2 strategic game indexed by (family 1 action, family 2 action).

    Attributes:
        setup: The TwoFamilySetup the payoffs come from.
    """

    def __init__(
        self, setup: TwoFamilySetup, cells: dict[tuple[Action, Action], GameCell]
    ) -> None:
        """Initialize an ObeyDisobeyGame.

        Raises:
            InvalidParameterError: If a cell is missing or (Obey, Obey) is not finite.
        """
        missing = [key for key in product(ACTIONS, repeat=2) if key not in cells]
        if missing:
            raise InvalidParameterError(f"missing game cells: {missing}")
        if not isinstance(cells[Action.OBEY, Action.OBEY], FiniteCell):
            raise InvalidParameterError("the (obey, obey) cell must be finite")
        self._setup = setup
        self._cells = dict(cells)

    @property
    def setup(self) -> TwoFamilySetup:
        return self._setup

    def __getitem__(self, index: tuple[Action, Action]) -> GameCell:
        return self._cells[index]

    def __iter__(self):
        """Iterate over ((a1, a2), cell) in row-major order."""
        for key in product(ACTIONS, repeat=2):
            yield key, self._cells[key]

    @property
    def divergent(self) -> list[tuple[Action, Action]]:
        return [key for key, cell in self if isinstance(cell, DivergentCell)]

    def best_finite_cell(self) -> tuple[tuple[Action, Action], FiniteCell]:
        """Finite cell with the highest summed utility (first in row-major order on ties)."""
        finite = [(key, cell) for key, cell in self if isinstance(cell, FiniteCell)]
        return max(finite, key=lambda item: item[1].welfare)

    def __str__(self) -> str:
        """Render the payoff matrix; rows are family 1's action."""
        width = 34
        lines = [f"{'':12}" + "".join(f"{'F2 ' + a.value:{width}}" for a in ACTIONS)]
        lines.append(" " * 12 + "-" * (width * 2))
        for a1 in ACTIONS:
            row = f"{'F1 ' + a1.value:11}|"
            for a2 in ACTIONS:
                row += f"{format_cell(self[a1, a2]):{width}}"
            lines.append(row)
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"ObeyDisobeyGame(gamma=({self._setup.fam1.gamma}, {self._setup.fam2.gamma}))"


def format_cell(cell: GameCell) -> str:
    """Finite payoffs to 4 decimals; divergent cells by escalation rate."""
    if isinstance(cell, FiniteCell):
        return f"({cell.u1:.4f}, {cell.u2:.4f})"
    return f"divergent (+{cell.escalation_rate:.4f} h/round-trip)"


def _parametric_form(fam: FamilyParams, other: FamilyParams, var: str) -> str:
    """ln(gamma / 2P) - P * BR(t_other) written as ln(a) - (b*t + c)/gamma."""
    a = log_argument_at_best_response(fam)
    b = fam.p * other.gamma
    c = fam.gamma - 4 * fam.p
    sign = "+" if c >= 0 else "-"
    return f"ln({a:g}) - ({b:g}*{var} {sign} {abs(c):g})/{fam.gamma:g}"


def _finite(setup: TwoFamilySetup, t1: Effort, t2: Effort) -> FiniteCell:
    u1 = two_family_utility(setup.fam1, setup.fam2, t1, t2).utility
    u2 = two_family_utility(setup.fam2, setup.fam1, t2, t1).utility
    return FiniteCell(u1=u1, u2=u2, profile=(t1, t2))


def _best_response_payoff(
    fam_i: FamilyParams, fam_j: FamilyParams, t_i: Effort, t_j: Effort, cap: float
) -> float:
    """Payoff of family i playing its best response t_i against t_j."""
    # interior responses that clear the mean score have log argument gamma / 2P
    if 0 < t_i < cap and log_argument_at_best_response(fam_i) >= 2:
        return interior_payoff_at_best_response(fam_i, t_i)
    return two_family_utility(fam_i, fam_j, t_i, t_j).utility


def _both_disobey(setup: TwoFamilySetup) -> GameCell:
    fam1, fam2, cap = setup.fam1, setup.fam2, setup.t_hard_cap
    delta = escalation_rate(fam1, fam2)

    if delta > 0:
        logger.debug("both-disobey cell diverges: +%.6f hours per round-trip", delta)

        def u1_of_t2(t2: float) -> float:
            t1 = best_response_two_family(fam1, fam2.gamma, t2, cap)
            return _best_response_payoff(fam1, fam2, t1, t2, cap)

        def u2_of_t1(t1: float) -> float:
            t2 = best_response_two_family(fam2, fam1.gamma, t1, cap)
            return _best_response_payoff(fam2, fam1, t2, t1, cap)

        return DivergentCell(
            escalation_rate=delta,
            u1_of_t2=u1_of_t2,
            u2_of_t1=u2_of_t1,
            form1=_parametric_form(fam1, fam2, "t2"),
            form2=_parametric_form(fam2, fam1, "t1"),
        )

    if delta == 0:
        t1 = best_response_two_family(fam1, fam2.gamma, setup.t_obey, cap)
        t2 = best_response_two_family(fam2, fam1.gamma, t1, cap)
        logger.debug("both-disobey cell is a continuum of fixed points; using (%g, %g)", t1, t2)
        return _finite(setup, t1, t2)

    # efforts shrink each round-trip until the zero clamp holds them
    trace = best_response_dynamics(
        setup, (setup.t_obey, setup.t_obey), _CONVERGENCE_ROUNDS, UpdateScheme.ALTERNATING
    )
    if trace.status is not DynamicsStatus.CONVERGED:
        logger.warning("contracting dynamics stopped with status %s", trace.status.value)
    t1, t2 = trace.profiles[-1]
    return _finite(setup, t1, t2)


def build_obey_disobey_game(setup: TwoFamilySetup) -> ObeyDisobeyGame:
    """Build the 2x2 obey/disobey game.

    A disobeying family best-responds to the obeying family's t_obey; both
    payoffs are evaluated at the resulting profile with S_cut the mean score.

    Args:
        setup: Aptitudes, cost coefficients and the policy study time.

    Returns:
        ObeyDisobeyGame whose (disobey, disobey) cell is divergent whenever the
        escalation rate is positive.
    """
    fam1, fam2, t_obey, cap = setup.fam1, setup.fam2, setup.t_obey, setup.t_hard_cap
    t1_dev = best_response_two_family(fam1, fam2.gamma, t_obey, cap)
    t2_dev = best_response_two_family(fam2, fam1.gamma, t_obey, cap)

    cells: dict[tuple[Action, Action], GameCell] = {
        (Action.OBEY, Action.OBEY): _finite(setup, t_obey, t_obey),
        (Action.DISOBEY, Action.OBEY): _finite(setup, t1_dev, t_obey),
        (Action.OBEY, Action.DISOBEY): _finite(setup, t_obey, t2_dev),
        (Action.DISOBEY, Action.DISOBEY): _both_disobey(setup),
    }
    return ObeyDisobeyGame(setup, cells)


@dataclass(frozen=True)
class Improvement:
    """Effect of switching from obey to disobey for one family against one opponent action."""

    family: int
    opponent_action: Action
    u_obey: float
    u_disobey: float

    @property
    def improves(self) -> bool:
        return self.u_disobey > self.u_obey


@dataclass(frozen=True)
class DominanceReport:
    """Outcome of analyze_dominance.

    Attributes:
        reference_profile: Profile used to evaluate divergent cells.
        evaluated: Numeric payoffs used for every cell.
        improvements: One entry per (family, opponent action).
        dominant_disobey: Per family, whether disobey strictly improves against both actions.
        pure_nash: Finite cells no family can strictly improve on unilaterally.
        no_finite_equilibrium: Divergent cells.
    """

    reference_profile: tuple[Effort, Effort]
    evaluated: dict[tuple[Action, Action], tuple[float, float]]
    improvements: list[Improvement]
    dominant_disobey: tuple[bool, bool]
    pure_nash: list[tuple[Action, Action]]
    no_finite_equilibrium: list[tuple[Action, Action]]


def default_reference_profile(setup: TwoFamilySetup) -> tuple[Effort, Effort]:
    """Mutual best responses after one simultaneous round from (t_obey, t_obey)."""
    cap = setup.t_hard_cap
    return (
        best_response_two_family(setup.fam1, setup.fam2.gamma, setup.t_obey, cap),
        best_response_two_family(setup.fam2, setup.fam1.gamma, setup.t_obey, cap),
    )


def analyze_dominance(
    game: ObeyDisobeyGame,
    reference_profile: tuple[Effort, Effort] | None = None,
) -> DominanceReport:
    """Report whether disobeying pays and which finite cells are pure Nash equilibria.

    Divergent cells are compared through their parametric payoffs evaluated at
    the reference profile: u1 = u1_of_t2(ref t2), u2 = u2_of_t1(ref t1).
    """
    ref = reference_profile or default_reference_profile(game.setup)

    evaluated: dict[tuple[Action, Action], tuple[float, float]] = {}
    for key, cell in game:
        if isinstance(cell, FiniteCell):
            evaluated[key] = (cell.u1, cell.u2)
        else:
            evaluated[key] = (cell.u1_of_t2(ref[1]), cell.u2_of_t1(ref[0]))

    improvements: list[Improvement] = []
    for opponent in ACTIONS:
        u_obey = evaluated[Action.OBEY, opponent][0]
        u_disobey = evaluated[Action.DISOBEY, opponent][0]
        improvements.append(Improvement(1, opponent, u_obey, u_disobey))
    for opponent in ACTIONS:
        u_obey = evaluated[opponent, Action.OBEY][1]
        u_disobey = evaluated[opponent, Action.DISOBEY][1]
        improvements.append(Improvement(2, opponent, u_obey, u_disobey))
    dominant = tuple(
        all(imp.improves for imp in improvements if imp.family == fam) for fam in (1, 2)
    )

    pure_nash: list[tuple[Action, Action]] = []
    for key, cell in game:
        if not isinstance(cell, FiniteCell):
            continue
        a1, a2 = key
        other1 = Action.DISOBEY if a1 is Action.OBEY else Action.OBEY
        other2 = Action.DISOBEY if a2 is Action.OBEY else Action.OBEY
        stable1 = evaluated[other1, a2][0] <= cell.u1
        stable2 = evaluated[a1, other2][1] <= cell.u2
        if stable1 and stable2:
            pure_nash.append(key)

    return DominanceReport(
        reference_profile=ref,
        evaluated=evaluated,
        improvements=improvements,
        dominant_disobey=(dominant[0], dominant[1]),
        pure_nash=pure_nash,
        no_finite_equilibrium=game.divergent,
    )
