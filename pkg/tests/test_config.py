"""Tests for the JSON run configuration."""

import json
from pathlib import Path

import pytest

from arms_race.config import (
    NormalModel,
    RunConfig,
    default_config,
    load_config,
    parse_config,
)
from arms_race.core import ThresholdMode
from arms_race.emitters import OutputFormat
from arms_race.exceptions import ConfigError
from arms_race.policy import Diversion

FAMILY = {"id": "a", "gamma": 5.0, "p": 0.5}


def _scenario(name: str, policy: dict, n: int = 20) -> dict:
    return {
        "name": name,
        "policy": policy,
        "population": {"n": n, "gamma_dist": {"kind": "normal", "mean": 3.0, "sd": 1.0}},
        "sim": {"threshold": {"mode": "mean_plus_k_sigma", "k": 1.645}, "rounds_max": 5},
    }


class TestDefaults:
    """Tests for the default configuration."""

    def test_should_fill_every_block(self) -> None:
        cfg = default_config()
        for block in ("game", "figure1", "figure2", "figure3", "simulate", "policy"):
            assert getattr(cfg, block) is not None

    def test_should_round_trip_through_json(self) -> None:
        """Printed defaults parse back to the same configuration."""
        cfg = default_config()
        assert parse_config(cfg.to_json()).model_dump() == cfg.model_dump()

    def test_should_emit_all_formats_by_default(self) -> None:
        assert RunConfig().formats == [OutputFormat.CSV, OutputFormat.JSONL, OutputFormat.MD]

    def test_should_carry_published_game(self) -> None:
        game = default_config().game.to_domain()
        assert (game.fam1.gamma, game.fam2.gamma, game.t_obey) == (5.0, 4.0, 2.0)

    def test_should_resolve_missing_block_from_defaults(self) -> None:
        cfg = RunConfig().resolved("simulate")
        assert cfg.simulate == default_config().simulate
        assert cfg.game is None


class TestValidationErrors:
    """Tests for error reporting."""

    def test_should_name_missing_field(self) -> None:
        """A missing t_obey is reported with its dotted path."""
        with pytest.raises(ConfigError, match=r"game\.t_obey"):
            parse_config({"game": {"fam1": FAMILY, "fam2": FAMILY}})

    def test_should_reject_unknown_keys(self) -> None:
        with pytest.raises(ConfigError, match="bogus"):
            parse_config({"bogus": 1})

    def test_should_reject_unknown_nested_keys(self) -> None:
        with pytest.raises(ConfigError, match=r"game\.fam1\.colour"):
            parse_config(
                {"game": {"fam1": {**FAMILY, "colour": "red"}, "fam2": FAMILY, "t_obey": 2.0}}
            )

    def test_should_reject_non_positive_gamma(self) -> None:
        with pytest.raises(ConfigError, match=r"game\.fam2\.gamma"):
            parse_config(
                {"game": {"fam1": FAMILY, "fam2": {**FAMILY, "gamma": 0.0}, "t_obey": 2.0}}
            )

    def test_should_surface_domain_invariants(self) -> None:
        """A one-family population fails inside its block."""
        data = {
            "simulate": {
                "population": {"n": 1, "gamma_dist": {"kind": "explicit", "values": [3.0]}},
                "sim": {"threshold": {"mode": "fixed", "s_cut": 0.0}},
            }
        }
        with pytest.raises(ConfigError, match=r"simulate\.population.*n >= 2"):
            parse_config(data)

    def test_should_reject_invalid_keep_fraction(self) -> None:
        policy = {"kind": "diversion", "keep_fraction": 2}
        data = {"policy": {"scenarios": [_scenario("d", policy)]}}
        with pytest.raises(ConfigError, match="keep_fraction"):
            parse_config(data)

    def test_should_reject_duplicate_scenario_names(self) -> None:
        base = {"kind": "cee_baseline"}
        data = {"policy": {"scenarios": [_scenario("x", base), _scenario("x", base)]}}
        with pytest.raises(ConfigError, match="unique"):
            parse_config(data)

    def test_should_reject_negative_seed(self) -> None:
        with pytest.raises(ConfigError, match="seed"):
            parse_config({"seed": -1})

    def test_should_reject_unknown_format(self) -> None:
        with pytest.raises(ConfigError, match="formats"):
            parse_config({"formats": ["xml"]})

    def test_should_report_one_line_per_problem(self) -> None:
        with pytest.raises(ConfigError) as excinfo:
            parse_config({"game": {"fam1": FAMILY}})
        lines = str(excinfo.value).splitlines()
        assert any(line.startswith("game.fam2:") for line in lines)
        assert any(line.startswith("game.t_obey:") for line in lines)


class TestBlocks:
    """Tests for block-to-domain conversion."""

    def test_should_select_distribution_by_kind(self) -> None:
        cfg = parse_config(
            {
                "simulate": {
                    "population": {"n": 5, "gamma_dist": {"kind": "normal", "mean": 3, "sd": 1}},
                    "sim": {"threshold": {"mode": "mean_plus_k_sigma", "k": 0}},
                }
            }
        )
        assert isinstance(cfg.simulate.population.gamma_dist, NormalModel)
        sim = cfg.simulate.sim.to_domain()
        assert sim.threshold.mode is ThresholdMode.MEAN_PLUS_K_SIGMA

    def test_should_override_population_seed(self) -> None:
        cfg = parse_config({"policy": {"scenarios": [_scenario("b", {"kind": "cee_baseline"})]}})
        scenario = cfg.policy.scenarios[0]
        assert scenario.to_domain().base_pop.seed == 0
        assert scenario.to_domain(seed=42).base_pop.seed == 42

    def test_should_build_policy_kind(self) -> None:
        policy = {"kind": "diversion", "keep_fraction": 0.5}
        data = {"policy": {"scenarios": [_scenario("d", policy)]}}
        kind = parse_config(data).policy.scenarios[0].to_domain().kind
        assert kind == Diversion(keep_fraction=0.5)


class TestLoadConfig:
    """Tests for load_config."""

    def test_should_load_file(self, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seed": 3, "workers": 2}), encoding="utf-8")
        cfg = load_config(path)
        assert (cfg.seed, cfg.workers) == (3, 2)

    def test_should_report_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.json")

    def test_should_report_malformed_json(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(path)
