"""CSV, JSON-lines and markdown writers for result tables.

A Table is a named list of row dicts plus an ordered column schema. CSV and
markdown render only the schema columns, with fixed decimals per column
kind; JSON lines carry every key of every row at full float precision.
Output is deterministic: fixed column order, ``\\n`` line endings, UTF-8.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    CSV = "csv"
    JSONL = "jsonl"
    MD = "md"


class Kind(str, Enum):
    """Column kinds and their display precision."""

    UTILITY = "utility"
    EFFORT = "effort"
    THRESHOLD = "threshold"
    RATE = "rate"
    MONEY = "money"
    INT = "int"
    TEXT = "text"


_DECIMALS = {
    Kind.UTILITY: 4,
    Kind.EFFORT: 3,
    Kind.THRESHOLD: 3,
    Kind.RATE: 4,
    Kind.MONEY: 2,
}


@dataclass(frozen=True)
class Column:
    name: str
    kind: Kind = Kind.TEXT


@dataclass(frozen=True)
class Table:
    """Named result table.

    Attributes:
        name: File stem (``<name>.csv`` etc.).
        columns: Columns rendered in CSV and markdown, in order.
        rows: Row dicts; keys outside ``columns`` only reach JSON lines.
        notes: Free-text lines appended below the markdown table.
    """

    name: str
    columns: tuple[Column, ...]
    rows: list[dict[str, object]] = field(default_factory=list)
    notes: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.rows)


def format_value(value: object, kind: Kind) -> str:
    """Render one cell for CSV/markdown."""
    if value is None:
        return ""
    if isinstance(value, bool | np.bool_):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if kind in _DECIMALS and isinstance(value, int | float | np.number):
        return f"{float(value):.{_DECIMALS[kind]}f}"
    if kind is Kind.INT and isinstance(value, int | np.integer):
        return str(int(value))
    return str(value)


def _json_ready(value: object) -> object:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Mapping):
        return {str(k): _json_ready(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_json_ready(v) for v in value]
    return value


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([c.name for c in table.columns])
    for row in table.rows:
        writer.writerow([format_value(row.get(c.name), c.kind) for c in table.columns])
    return buffer.getvalue()


def render_jsonl(table: Table) -> str:
    return "".join(json.dumps(_json_ready(row)) + "\n" for row in table.rows)


def render_markdown(table: Table) -> str:
    header = "| " + " | ".join(c.name for c in table.columns) + " |"
    rule = "|" + "|".join("---" for _ in table.columns) + "|"
    lines = [f"## {table.name}", "", header, rule]
    for row in table.rows:
        cells = (format_value(row.get(c.name), c.kind) for c in table.columns)
        lines.append("| " + " | ".join(cells) + " |")
    if table.notes:
        lines.append("")
        lines.extend(f"> {note}" for note in table.notes)
    return "\n".join(lines) + "\n"


_RENDERERS = {
    OutputFormat.CSV: render_csv,
    OutputFormat.JSONL: render_jsonl,
    OutputFormat.MD: render_markdown,
}


def write_tables(
    tables: Iterable[Table],
    output_dir: str | Path,
    formats: Sequence[OutputFormat],
) -> list[Path]:
    """Write each table once per format; returns the paths written, in order."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for table in tables:
        for fmt in formats:
            path = out / f"{table.name}.{fmt.value}"
            path.write_text(_RENDERERS[fmt](table), encoding="utf-8", newline="\n")
            written.append(path)
    logger.info("wrote %d files to %s", len(written), out)
    return written
