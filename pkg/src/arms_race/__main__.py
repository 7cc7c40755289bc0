"""Command-line driver for the education arms-race model.

Run with: arms-race <command> [--config PATH] [--seed N] [--out DIR] [--format F] [--workers N]
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from arms_race import presets
from arms_race.config import RunConfig, default_config, load_config, parse_config
from arms_race.core import FamilyParams, payoff, threshold_from_moments
from arms_race.dynamics import (
    SimStatus,
    best_response_population,
    simulate_feedback,
    threshold_shift_effect,
    welfare_report,
)
from arms_race.emitters import Column, Kind, OutputFormat, Table, write_tables
from arms_race.equilibrium import TwoFamilySetup, best_response_dynamics, escalation_rate
from arms_race.exceptions import ArmsRaceError, ConfigError, DegeneratePoolError
from arms_race.game import (
    ACTIONS,
    Action,
    DivergentCell,
    FiniteCell,
    analyze_dominance,
    build_obey_disobey_game,
)
from arms_race.policy import PolicyReport, PolicyScenario, compare_policies, run_policy_scenario
from arms_race.signaling import beta_sensitivity, signaling_decision_table

logger = logging.getLogger("arms_race")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DEGENERATE = 2
EXIT_DIVERGED = 3

_STATUS_EXIT = {
    SimStatus.CONVERGED: EXIT_OK,
    SimStatus.MAX_ROUNDS: EXIT_OK,
    SimStatus.EMPTY_POPULATION: EXIT_DEGENERATE,
    SimStatus.DIVERGED: EXIT_DIVERGED,
}


@dataclass
class CommandResult:
    """Tables to emit, text for stdout and the exit code."""

    tables: list[Table] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK


def _published_game(setup: TwoFamilySetup) -> tuple[dict, float | None, bool]:
    """Published payoffs, best-cell welfare and log-4 flag for a known parameterization."""

    def key(s: TwoFamilySetup) -> tuple[float, ...]:
        return (s.fam1.gamma, s.fam2.gamma, s.fam1.p, s.fam2.p, s.t_obey)

    if key(setup) == key(presets.UNEQUAL_APTITUDE):
        return presets.PUBLISHED_UNEQUAL, presets.PUBLISHED_BEST_WELFARE["unequal"], False
    if key(setup) == key(presets.EQUAL_APTITUDE):
        return presets.PUBLISHED_EQUAL, presets.PUBLISHED_BEST_WELFARE["equal"], True
    return {}, None, False


def cmd_game(cfg: RunConfig) -> CommandResult:
    """Payoff table, dominance report and best-response trace of the 2x2 game."""
    block = cfg.resolved("game").game
    setup = block.to_domain()
    game = build_obey_disobey_game(setup)
    report = analyze_dominance(game)
    published, published_welfare, log4 = _published_game(setup)
    notes = [presets.LOG4_NOTE] if log4 else []
    delta = escalation_rate(setup.fam1, setup.fam2)
    both = game[Action.DISOBEY, Action.DISOBEY]
    if delta < 0 and isinstance(both, FiniteCell):
        notes.append(
            f"escalation rate {delta:g} < 0: mutual best responses contract to the zero-effort "
            "clamp, so the both-disobey cell is finite at "
            f"({both.profile[0]:.3f}, {both.profile[1]:.3f})"
        )

    payoffs = Table(
        "game_payoffs",
        (
            Column("family1"),
            Column("family2"),
            Column("cell"),
            Column("u1", Kind.UTILITY),
            Column("u2", Kind.UTILITY),
            Column("t1", Kind.EFFORT),
            Column("t2", Kind.EFFORT),
            Column("escalation_rate", Kind.EFFORT),
            Column("form1"),
            Column("form2"),
            Column("published"),
        ),
        notes=tuple(notes),
    )
    for (a1, a2), cell in game:
        pub = published.get((a1, a2))
        row: dict[str, object] = {
            "family1": a1.value,
            "family2": a2.value,
            "published": f"({pub[0]:g}, {pub[1]:g})" if pub else None,
        }
        if isinstance(cell, FiniteCell):
            row |= {
                "cell": "finite",
                "u1": cell.u1,
                "u2": cell.u2,
                "t1": cell.profile[0],
                "t2": cell.profile[1],
            }
        else:
            row |= {
                "cell": "divergent",
                "escalation_rate": cell.escalation_rate,
                "form1": cell.form1,
                "form2": cell.form2,
            }
        payoffs.rows.append(row)

    nash = ", ".join(f"{a.value}/{b.value}" for a, b in report.pure_nash) or "none"
    dominance = Table(
        "game_dominance",
        (
            Column("family", Kind.INT),
            Column("opponent"),
            Column("u_obey", Kind.UTILITY),
            Column("u_disobey", Kind.UTILITY),
            Column("disobey_improves"),
        ),
        notes=(
            "reference profile for divergent cells: ({:.3f}, {:.3f})".format(
                *report.reference_profile
            ),
            f"pure Nash: {nash}",
        ),
    )
    for imp in report.improvements:
        dominance.rows.append(
            {
                "family": imp.family,
                "opponent": imp.opponent_action.value,
                "u_obey": imp.u_obey,
                "u_disobey": imp.u_disobey,
                "disobey_improves": imp.improves,
            }
        )

    (b1, b2), best = game.best_finite_cell()
    summary = Table(
        "game_summary",
        (
            Column("best_cell"),
            Column("welfare", Kind.UTILITY),
            Column("published_welfare"),
            Column("dominant_disobey_1"),
            Column("dominant_disobey_2"),
            Column("divergent_cells", Kind.INT),
        ),
        rows=[
            {
                "best_cell": f"{b1.value}/{b2.value}",
                "welfare": best.welfare,
                "published_welfare": published_welfare,
                "dominant_disobey_1": report.dominant_disobey[0],
                "dominant_disobey_2": report.dominant_disobey[1],
                "divergent_cells": len(report.no_finite_equilibrium),
            }
        ],
    )

    trace = best_response_dynamics(
        setup, (setup.t_obey, setup.t_obey), block.dynamics_rounds, block.scheme
    )
    dynamics = Table(
        "game_dynamics",
        (Column("round", Kind.INT), Column("t1", Kind.EFFORT), Column("t2", Kind.EFFORT)),
        rows=[{"round": r, "t1": t1, "t2": t2} for r, (t1, t2) in enumerate(trace.profiles)],
        notes=(f"status: {trace.status.value}",),
    )

    text = [str(game), ""]
    for a1 in ACTIONS:
        for a2 in ACTIONS:
            cell = game[a1, a2]
            if isinstance(cell, DivergentCell):
                text.append(f"{a1.value}/{a2.value}: u1 = {cell.form1}; u2 = {cell.form2}")
    if log4:
        text.append(f"note: {presets.LOG4_NOTE}")
    return CommandResult([payoffs, dominance, summary, dynamics], text)


def _t_grid(t_max: float, step: float) -> np.ndarray:
    return np.linspace(0.0, t_max, int(round(t_max / step)) + 1)


def _curve_rows(fam: FamilyParams, s_cut: float, grid: np.ndarray, tag: dict) -> list[dict]:
    return [{**tag, "t": float(t), "u": payoff(fam.gamma, fam.p, float(t), s_cut)} for t in grid]


def cmd_figure1(cfg: RunConfig) -> CommandResult:
    """Utility curves of one family at several thresholds, with their maxima."""
    block = cfg.resolved("figure1").figure1
    fam = FamilyParams("focal", block.gamma, block.p)
    grid = _t_grid(block.t_max, block.step)

    curves = Table(
        "figure1_curves",
        (Column("s_cut", Kind.THRESHOLD), Column("t", Kind.EFFORT), Column("u", Kind.UTILITY)),
    )
    optima = Table(
        "figure1_optima",
        (
            Column("s_cut", Kind.THRESHOLD),
            Column("t_star", Kind.EFFORT),
            Column("u_star", Kind.UTILITY),
            Column("published"),
        ),
    )
    for s_cut in block.s_cuts:
        curves.rows.extend(_curve_rows(fam, s_cut, grid, {"s_cut": s_cut}))
        t_star = best_response_population(fam, s_cut, block.t_max)
        pub = None
        if (block.gamma, block.p) == (presets.FIGURE1_GAMMA, presets.FIGURE1_P):
            pub = presets.PUBLISHED_FIGURE1.get(s_cut)
        optima.rows.append(
            {
                "s_cut": s_cut,
                "t_star": t_star,
                "u_star": payoff(fam.gamma, fam.p, t_star, s_cut),
                "published": f"({pub[0]:g}, {pub[1]:g})" if pub else None,
            }
        )

    shifts = Table(
        "figure1_shift",
        (
            Column("s_cut_before", Kind.THRESHOLD),
            Column("s_cut_after", Kind.THRESHOLD),
            Column("effort_change", Kind.RATE),
            Column("utility_change", Kind.RATE),
        ),
    )
    base = block.s_cuts[0]
    for s_cut in block.s_cuts[1:]:
        effect = threshold_shift_effect(fam, base, s_cut, block.t_max)
        shifts.rows.append(
            {
                "s_cut_before": base,
                "s_cut_after": s_cut,
                "effort_change": effect.effort_change,
                "utility_change": effect.utility_change,
            }
        )

    text = [f"s_cut={r['s_cut']:g}: t*={r['t_star']:.4f} u*={r['u_star']:.4f}" for r in optima.rows]
    tables = [curves, optima] + ([shifts] if shifts.rows else [])
    return CommandResult(tables, text)


def cmd_figure2(cfg: RunConfig) -> CommandResult:
    """Thresholds implied by each score dispersion and the focal student's curves."""
    block = cfg.resolved("figure2").figure2
    fam = FamilyParams("focal", block.gamma, block.p)
    grid = _t_grid(block.t_max, block.step)
    matches_published = (block.mean_score, block.k) == (
        presets.FIGURE2_MEAN_SCORE,
        presets.FIGURE2_K,
    )

    thresholds = Table(
        "figure2_thresholds",
        (
            Column("sigma", Kind.THRESHOLD),
            Column("s_cut", Kind.THRESHOLD),
            Column("t_star", Kind.EFFORT),
            Column("u_star", Kind.UTILITY),
            Column("published"),
        ),
    )
    curves = Table(
        "figure2_curves",
        (
            Column("sigma", Kind.THRESHOLD),
            Column("s_cut", Kind.THRESHOLD),
            Column("t", Kind.EFFORT),
            Column("u", Kind.UTILITY),
        ),
    )
    for sigma in block.sigmas:
        s_cut = threshold_from_moments(block.mean_score, sigma, block.k)
        t_star = best_response_population(fam, s_cut, block.t_max)
        thresholds.rows.append(
            {
                "sigma": sigma,
                "s_cut": s_cut,
                "t_star": t_star,
                "u_star": payoff(fam.gamma, fam.p, t_star, s_cut),
                "published": presets.PUBLISHED_FIGURE2.get(sigma) if matches_published else None,
            }
        )
        curves.rows.extend(_curve_rows(fam, s_cut, grid, {"sigma": sigma, "s_cut": s_cut}))

    text = [f"sigma={r['sigma']:g}: s_cut={r['s_cut']:.3f}" for r in thresholds.rows]
    return CommandResult([thresholds, curves], text)


def cmd_figure3(cfg: RunConfig) -> CommandResult:
    """Cost-versus-wage decisions and participation across beta."""
    block = cfg.resolved("figure3").figure3
    families = [f.to_domain() for f in block.families]
    wages = block.wages.to_domain()

    decisions = Table(
        "figure3_decisions",
        (
            Column("family"),
            Column("gamma", Kind.THRESHOLD),
            Column("t_needed", Kind.EFFORT),
            Column("cost", Kind.MONEY),
            Column("study_payoff", Kind.MONEY),
            Column("quit_payoff", Kind.MONEY),
            Column("choice"),
        ),
    )
    for row in signaling_decision_table(families, block.s_cut, wages, block.wage_p):
        decisions.rows.append(
            {
                "family": row.family_id,
                "gamma": row.gamma,
                "t_needed": row.t_needed,
                "cost": row.cost,
                "study_payoff": row.study_payoff,
                "quit_payoff": row.quit_payoff,
                "choice": row.choice,
            }
        )

    sensitivity = Table(
        "figure3_beta",
        (
            Column("beta", Kind.RATE),
            Column("participation_rate", Kind.RATE),
            Column("mean_payoff", Kind.MONEY),
            Column("pool_dispersion", Kind.RATE),
        ),
    )
    for s in beta_sensitivity(families, wages, block.s_cut, block.beta_grid, block.wage_p):
        sensitivity.rows.append(
            {
                "beta": s.beta,
                "participation_rate": s.participation_rate,
                "mean_payoff": s.mean_payoff,
                "pool_dispersion": s.pool_dispersion,
            }
        )

    text = [
        f"{r['family']}: cost {r['cost']:.2f} -> {r['choice'].value}" for r in decisions.rows
    ]
    return CommandResult([decisions, sensitivity], text)


def cmd_simulate(cfg: RunConfig) -> CommandResult:
    """Feedback simulation trace and welfare summary; exit code reflects the stop status."""
    block = cfg.resolved("simulate").simulate
    trace = simulate_feedback(block.population.to_domain(cfg.seed), block.sim.to_domain())

    rounds = Table(
        "simulate_trace",
        (
            Column("round", Kind.INT),
            Column("s_cut", Kind.THRESHOLD),
            Column("sigma_s", Kind.THRESHOLD),
            Column("mean_t", Kind.EFFORT),
            Column("welfare_total", Kind.UTILITY),
            Column("welfare_mean", Kind.UTILITY),
            Column("n_active", Kind.INT),
            Column("n_exhausted", Kind.INT),
        ),
        rows=[rec.to_dict() for rec in trace],
        notes=(f"status: {trace.status.value}",),
    )
    summary = welfare_report(trace)
    welfare = Table(
        "simulate_welfare",
        (
            Column("status"),
            Column("rounds", Kind.INT),
            Column("total_utility", Kind.UTILITY),
            Column("mean_utility", Kind.UTILITY),
            Column("mean_effort", Kind.EFFORT),
            Column("exhausted_fraction", Kind.RATE),
            Column("quit_fraction", Kind.RATE),
            Column("s_cut_final", Kind.THRESHOLD),
        ),
        rows=[
            {
                "status": summary.status,
                "rounds": len(summary.rounds) - 1,
                "total_utility": summary.total_utility,
                "mean_utility": summary.mean_utility,
                "mean_effort": summary.mean_effort,
                "exhausted_fraction": summary.exhausted_fraction,
                "quit_fraction": summary.quit_fraction,
                "s_cut_final": summary.s_cut_path[-1],
            }
        ],
    )
    text = [
        f"status: {trace.status.value} after {len(trace) - 1} rounds",
        f"final s_cut: {trace.final.s_cut:.3f}, mean effort: {trace.final.mean_t:.3f}",
    ]
    return CommandResult([rounds, welfare], text, _STATUS_EXIT[trace.status])


def _run_one(scenario: PolicyScenario) -> list[PolicyReport] | str:
    try:
        return run_policy_scenario(scenario)
    except DegeneratePoolError as e:
        logger.warning("scenario %s skipped: %s", scenario.name, e)
        return str(e)


def cmd_policy(cfg: RunConfig) -> CommandResult:
    """Run the scenario batch concurrently and compare the resulting reports."""
    block = cfg.resolved("policy").policy
    scenarios = [s.to_domain(cfg.seed) for s in block.scenarios]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        outcomes = list(pool.map(_run_one, scenarios))

    reports: list[PolicyReport] = []
    failures = Table("policy_failures", (Column("scenario"), Column("error")))
    for scenario, outcome in zip(scenarios, outcomes):
        if isinstance(outcome, str):
            failures.rows.append({"scenario": scenario.name, "error": outcome})
        else:
            reports.extend(outcome)

    table = Table(
        "policy_reports",
        (
            Column("scenario"),
            Column("status"),
            Column("welfare_total", Kind.UTILITY),
            Column("welfare_mean", Kind.UTILITY),
            Column("s_cut_final", Kind.THRESHOLD),
            Column("mean_effort", Kind.EFFORT),
            Column("participation_share", Kind.RATE),
            Column("utility_gini", Kind.RATE),
            Column("excluded_utility_gap", Kind.UTILITY),
        ),
        rows=[r.to_dict() for r in reports],
    )
    tables = [table]
    if failures.rows:
        tables.append(failures)
    if len(reports) >= 2:
        tradeoff = compare_policies(reports)
        tables.append(
            Table(
                "policy_comparison",
                (
                    Column("relation"),
                    Column("first"),
                    Column("second"),
                    Column("welfare_diff", Kind.UTILITY),
                    Column("participation_diff", Kind.RATE),
                ),
                rows=[
                    {
                        "relation": f.kind.value,
                        "first": f.first,
                        "second": f.second,
                        "welfare_diff": f.welfare_diff,
                        "participation_diff": f.participation_diff,
                    }
                    for f in tradeoff.findings
                ],
            )
        )

    text = [
        f"{r.scenario}: welfare_mean={r.welfare_mean:.4f} "
        f"participation={r.equity.participation_share:.4f} ({r.status})"
        for r in reports
    ]
    text.extend(f"{row['scenario']}: skipped ({row['error']})" for row in failures.rows)
    return CommandResult(tables, text, EXIT_DEGENERATE if failures.rows else EXIT_OK)


COMMANDS = {
    "game": cmd_game,
    "figure1": cmd_figure1,
    "figure2": cmd_figure2,
    "figure3": cmd_figure3,
    "simulate": cmd_simulate,
    "policy": cmd_policy,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="JSON run configuration")
    common.add_argument("--seed", type=int, default=None, help="Override every population seed")
    common.add_argument("--out", type=str, default=None, help="Output directory")
    common.add_argument(
        "--format",
        action="append",
        choices=[f.value for f in OutputFormat],
        default=None,
        help="Output format; repeat for several (default: all)",
    )
    common.add_argument("--workers", type=int, default=None, help="Concurrent policy scenarios")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )

    parser = argparse.ArgumentParser(
        prog="arms-race",
        description="Education arms-race model: games, figures, simulations and policy runs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s game                         # published unequal-aptitude game
  %(prog)s simulate --seed 7 --out run  # seeded population simulation
  %(prog)s policy --config batch.json   # policy scenario batch
  %(prog)s defaults > config.json       # full default configuration
""",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=fn.__doc__)
    sub.add_parser("validate-config", parents=[common], help="Validate a config and exit")
    sub.add_parser("defaults", parents=[common], help="Print the default configuration")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    update: dict[str, object] = {}
    if args.seed is not None:
        update["seed"] = args.seed
    if args.out is not None:
        update["output_dir"] = args.out
    if args.format:
        update["formats"] = list(dict.fromkeys(args.format))
    if args.workers is not None:
        update["workers"] = args.workers
    # revalidate so overrides obey the same schema as the file
    return parse_config({**cfg.model_dump(mode="json"), **update})


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    if args.command == "defaults":
        print(default_config().to_json(), end="")
        return EXIT_OK

    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        cfg = _apply_overrides(cfg, args)
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID

    if args.command == "validate-config":
        print(f"OK: {args.config or '<defaults>'}")
        return EXIT_OK

    try:
        result = COMMANDS[args.command](cfg)
    except ArmsRaceError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID

    resolved = cfg.resolved(args.command)
    write_tables(result.tables, cfg.output_dir, cfg.formats)
    Path(cfg.output_dir, "config.json").write_text(
        resolved.to_json(), encoding="utf-8", newline="\n"
    )

    for line in result.summary:
        print(line)
    print(f"Output: {cfg.output_dir}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
