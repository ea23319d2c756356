"""Result-table writers: CSV, JSON and Markdown."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any

import numpy as np
from jinja2 import Environment, FileSystemLoader, StrictUndefined, select_autoescape

from qcaveat import __version__
from qcaveat.analysis.experiments import ResultTable
from qcaveat.config.defaults import OUTPUT_FORMATS
from qcaveat.exceptions import ReportError
from qcaveat.utils.formatting import format_cell, format_float, format_metric
from qcaveat.utils.logging import get_logger

logger = get_logger(__name__)

_TEMPLATE_DIR = Path(__file__).parent / "templates"


def _json_value(value: Any) -> Any:
    """JSON-safe cell value; non-finite floats become strings."""
    if isinstance(value, bool | np.bool_):
        return bool(value)
    if isinstance(value, int | np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        value = float(value)
        return value if math.isfinite(value) else format_float(value)
    return str(value)


class ReportWriter:
    """Render result tables deterministically."""

    def __init__(self) -> None:
        self._env: Environment | None = None

    @property
    def env(self) -> Environment:
        """Get or create the Jinja2 environment."""
        if self._env is None:
            self._env = Environment(
                loader=FileSystemLoader(str(_TEMPLATE_DIR)),
                autoescape=select_autoescape(["html", "xml"]),
                trim_blocks=True,
                lstrip_blocks=True,
                keep_trailing_newline=True,
                undefined=StrictUndefined,
            )
            self._env.filters["format_metric"] = format_metric
        return self._env

    def render(self, table: ResultTable, fmt: str) -> str:
        """
        Render a table as text.

        Args:
            table: The result table.
            fmt: One of csv, json, markdown.

        Returns:
            The rendered document, newline terminated.

        Raises:
            ReportError: If the format is unknown or a row lacks a column.
        """
        fmt = fmt.lower()
        if fmt not in OUTPUT_FORMATS:
            raise ReportError(f"Unknown output format {fmt!r}; expected one of {OUTPUT_FORMATS}")
        for index, row in enumerate(table.rows):
            missing = [c for c in table.columns if c not in row]
            if missing:
                raise ReportError(f"Row {index} of {table.scenario} lacks columns {missing}")

        if fmt == "csv":
            return self._render_csv(table)
        if fmt == "json":
            return self._render_json(table)
        return self._render_markdown(table)

    def write(self, table: ResultTable, path: Path, fmt: str) -> Path:
        """
        Render a table and write it to disk.

        Returns:
            The path written.

        Raises:
            ReportError: If rendering or writing fails.
        """
        content = self.render(table, fmt)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            # newline="" keeps "\n" line endings on every platform
            with path.open("w", encoding="utf-8", newline="") as handle:
                handle.write(content)
        except OSError as e:
            raise ReportError(f"Cannot write report to {path}: {e}") from e
        logger.info(f"Report written: {path} ({fmt}, {len(table)} rows)")
        return path

    def _render_csv(self, table: ResultTable) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_cell(row[c]) for c in table.columns])
        return buffer.getvalue()

    def _render_json(self, table: ResultTable) -> str:
        document = {
            "scenario": table.scenario,
            "seed": table.seed,
            "columns": list(table.columns),
            "rows": [{c: _json_value(row[c]) for c in table.columns} for row in table.rows],
        }
        return json.dumps(document, indent=2, allow_nan=False) + "\n"

    def _render_markdown(self, table: ResultTable) -> str:
        template = self.env.get_template("table.md.j2")
        return template.render(
            scenario=table.scenario,
            seed=table.seed,
            columns=table.columns,
            rows=[[row[c] for c in table.columns] for row in table.rows],
            version=__version__,
        )


def render_table(table: ResultTable, fmt: str) -> str:
    """Convenience wrapper around ReportWriter.render."""
    return ReportWriter().render(table, fmt)


def write_table(table: ResultTable, path: Path, fmt: str) -> Path:
    """Convenience wrapper around ReportWriter.write."""
    return ReportWriter().write(table, path, fmt)
