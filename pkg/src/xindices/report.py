"""Deterministic report rendering: json (default), csv, and aligned table.

Identical inputs and flags must produce byte-identical output, so key order
is fixed, numbers are canonicalised (integral floats print without ".0",
everything else as shortest round-trip repr), and rows follow table rank.
The json layout is described by schema/report.schema.json in the repo.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

from .kernel import IndexResult
from .numfmt import canonical_json_value, format_number

TABLE_COLUMNS = ("rank", "label", "weight", "ratio")


@dataclass
class Report:
    """Everything one command run emits: result, provenance, warnings."""

    version: str
    command: str
    result: IndexResult
    config: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "command": self.command,
            "index": self.result.kind,
            "ratio_type": self.result.ratio_type,
            "value": self.result.value,
            "table": [
                {
                    "rank": row.rank,
                    "label": row.label,
                    "weight": canonical_json_value(row.weight),
                    "ratio": canonical_json_value(row.ratio),
                }
                for row in self.result.table.rows
            ],
            "config": self.config,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        for row in self.result.table.rows:
            writer.writerow(
                [row.rank, row.label, format_number(row.weight), format_number(row.ratio)]
            )
        return out.getvalue()

    def to_table(self) -> str:
        """Column-aligned listing; the final line is the bare index value so
        scripts can read it with tail -n1."""
        cells = [list(TABLE_COLUMNS)]
        for row in self.result.table.rows:
            cells.append(
                [str(row.rank), row.label, format_number(row.weight), format_number(row.ratio)]
            )
        widths = [max(len(line[col]) for line in cells) for col in range(len(TABLE_COLUMNS))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in cells]
        header = f"{self.result.kind}-index ({self.result.ratio_type}-type)"
        for warning in self.warnings:
            lines.append(f"warning: {warning}")
        return "\n".join([header, *lines, str(self.result.value)]) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown report format {fmt!r}")
