"""
Rich console output formatter.

Renders a command's result as a table of records, or as a key/value table
when the command has no record list.
"""

from typing import Any

from rich.console import Console
from rich.table import Table

from .csv_formatter import format_cell


class ConsoleFormatter:
    """Formats command results for Rich console display."""

    def __init__(self, console: Console | None = None):
        self.console = console or Console()

    def display(self, command: str, output) -> None:
        title = output.title or command
        if output.rows:
            self._display_rows(title, output.rows)
        else:
            self._display_mapping(title, output.payload)
        status = "[green]✓ pass[/green]" if output.ok else "[red]✗ fail[/red]"
        self.console.print(f"\n[bold dim]{command}[/bold dim] {status}")

    def _display_rows(self, title: str, rows: list[dict[str, Any]]) -> None:
        columns: list[str] = []
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
        table = Table(title=title, show_header=True, header_style="bold cyan", pad_edge=False)
        for column in columns:
            table.add_column(column, justify="right" if column != "name" else "left")
        for row in rows:
            cells = [self._cell(row.get(column)) for column in columns]
            table.add_row(*cells)
        self.console.print(table)

    def _display_mapping(self, title: str, payload: dict[str, Any]) -> None:
        table = Table(title=title, show_header=False, box=None, pad_edge=False)
        table.add_column("Key", style="bold")
        table.add_column("Value")
        for key, value in payload.items():
            table.add_row(key, self._cell(value))
        self.console.print(table)

    def _cell(self, value: Any) -> str:
        if isinstance(value, bool):
            return "[green]✓[/green]" if value else "[red]✗[/red]"
        if isinstance(value, dict):
            if "decimal_approx" in value:
                return f"{value['decimal_approx']} [dim](ln {format_cell(value['ln'])})[/dim]"
            return ", ".join(f"{k}={self._cell(v)}" for k, v in value.items())
        if isinstance(value, list):
            return "[" + ", ".join(self._cell(v) for v in value) + "]"
        return format_cell(value)
