"""
Output formatters.

Provides JSON, CSV and Rich console formatting for command results.
"""

from .console_formatter import ConsoleFormatter
from .csv_formatter import CSVFormatter, format_cell
from .json_formatter import JSONFormatter

__all__ = ["CSVFormatter", "ConsoleFormatter", "JSONFormatter", "format_cell"]
