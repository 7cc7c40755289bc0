"""Tests for the command-line entry point run as a module."""

import subprocess
import sys
from pathlib import Path


def _run(*args: str, timeout: int = 60) -> subprocess.CompletedProcess[str]:
    return subprocess.run(
        [sys.executable, "-m", "arms_race", *args],
        capture_output=True,
        text=True,
        timeout=timeout,
    )


class TestCLIHelp:
    """Tests for usage output."""

    def test_should_show_help(self) -> None:
        result = _run("--help", timeout=10)
        assert result.returncode == 0
        for command in ("game", "simulate", "policy", "defaults"):
            assert command in result.stdout

    def test_should_reject_unknown_command(self) -> None:
        result = _run("bogus", timeout=10)
        assert result.returncode != 0
        assert "invalid choice" in result.stderr


class TestCLICommands:
    """Tests for complete runs."""

    def test_should_run_game(self, tmp_path: Path) -> None:
        result = _run("game", "--out", str(tmp_path))
        assert result.returncode == 0
        assert "divergent" in result.stdout
        assert (tmp_path / "game_summary.csv").exists()

    def test_should_log_progress_when_verbose(self, tmp_path: Path) -> None:
        """-v sends INFO records to stderr."""
        result = _run("simulate", "-v", "--out", str(tmp_path), "--format", "csv")
        assert "INFO arms_race" in result.stderr
        assert "Output:" in result.stdout

    def test_should_print_defaults(self) -> None:
        result = _run("defaults", timeout=10)
        assert result.returncode == 0
        assert '"output_dir": "out"' in result.stdout

    def test_should_exit_one_on_missing_config(self, tmp_path: Path) -> None:
        result = _run("game", "--config", str(tmp_path / "absent.json"))
        assert result.returncode == 1
        assert "cannot read config" in result.stderr
