"""Tests for the CSV, JSON-lines and markdown writers."""

import json
from pathlib import Path

import numpy as np

from arms_race.emitters import (
    Column,
    Kind,
    OutputFormat,
    Table,
    format_value,
    render_csv,
    render_jsonl,
    render_markdown,
    write_tables,
)
from arms_race.game import Action


def _table() -> Table:
    return Table(
        "demo",
        (Column("name"), Column("u", Kind.UTILITY), Column("t", Kind.EFFORT)),
        rows=[
            {"name": "a", "u": 0.1 + 0.2, "t": 2.0, "extra": [1, 2]},
            {"name": "b", "u": -1.0, "t": None},
        ],
        notes=("first note",),
    )


class TestFormatValue:
    """Tests for format_value."""

    def test_should_round_by_kind(self) -> None:
        assert format_value(0.098612, Kind.UTILITY) == "0.0986"
        assert format_value(2.8, Kind.EFFORT) == "2.800"
        assert format_value(1500, Kind.MONEY) == "1500.00"

    def test_should_render_missing_as_empty(self) -> None:
        assert format_value(None, Kind.UTILITY) == ""

    def test_should_render_booleans_as_words(self) -> None:
        assert format_value(True, Kind.TEXT) == "true"
        assert format_value(np.bool_(False), Kind.TEXT) == "false"

    def test_should_render_enum_values(self) -> None:
        assert format_value(Action.DISOBEY, Kind.TEXT) == "disobey"

    def test_should_render_integers_plainly(self) -> None:
        assert format_value(np.int64(7), Kind.INT) == "7"


class TestRenderers:
    """Tests for the three renderers."""

    def test_should_write_csv_schema_columns_only(self) -> None:
        lines = render_csv(_table()).split("\n")
        assert lines[0] == "name,u,t"
        assert lines[1] == "a,0.3000,2.000"
        assert lines[2] == "b,-1.0000,"

    def test_should_keep_full_precision_in_jsonl(self) -> None:
        first, second = (json.loads(line) for line in render_jsonl(_table()).splitlines())
        assert first["u"] == 0.1 + 0.2
        assert first["extra"] == [1, 2]
        assert second["t"] is None

    def test_should_convert_numpy_values_for_jsonl(self) -> None:
        table = Table("np", (Column("x"),), rows=[{"x": np.float64(1.5), "v": np.arange(2)}])
        assert json.loads(render_jsonl(table)) == {"x": 1.5, "v": [0, 1]}

    def test_should_render_markdown_with_notes(self) -> None:
        text = render_markdown(_table())
        assert text.startswith("## demo\n")
        assert "| name | u | t |" in text
        assert "| a | 0.3000 | 2.000 |" in text
        assert text.endswith("> first note\n")

    def test_should_end_files_with_newline(self) -> None:
        assert render_csv(_table()).endswith("\n")
        assert render_jsonl(_table()).endswith("\n")


class TestWriteTables:
    """Tests for write_tables."""

    def test_should_write_each_table_per_format(self, tmp_path: Path) -> None:
        paths = write_tables([_table()], tmp_path / "out", [OutputFormat.CSV, OutputFormat.MD])
        assert [p.name for p in paths] == ["demo.csv", "demo.md"]
        assert all(p.exists() for p in paths)

    def test_should_be_deterministic(self, tmp_path: Path) -> None:
        write_tables([_table()], tmp_path / "a", list(OutputFormat))
        write_tables([_table()], tmp_path / "b", list(OutputFormat))
        for fmt in OutputFormat:
            name = f"demo.{fmt.value}"
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
