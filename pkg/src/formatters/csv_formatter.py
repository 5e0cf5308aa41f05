"""
CSV output formatter.

Numbers are written with 12 significant digits through ``format``, which
ignores the locale.
"""

import csv
import io
from fractions import Fraction
from typing import Any, Iterable

from ..numeric import LogValue


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, LogValue):
        return format(value.ln_float(), ".12g") if not value.is_zero else "-inf"
    if isinstance(value, (float, Fraction)):
        return format(float(value), ".12g")
    return str(value)


class CSVFormatter:
    """Formats a list of flat records as CSV with a header row."""

    def format(self, rows: Iterable[dict[str, Any]]) -> str:
        rows = list(rows)
        columns: list[str] = []
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(column)) for column in columns])
        return buffer.getvalue()
