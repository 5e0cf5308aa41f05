"""
JSON output formatter.

Payloads are dumped with sorted keys so that parsing and re-serialising an
emitted document reproduces the same bytes.
"""

import json
from fractions import Fraction
from typing import Any

from mpmath import mpf

from ..numeric import LogValue


def _encode(value: Any) -> Any:
    if isinstance(value, LogValue):
        return value.to_json()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, mpf):
        return float(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if hasattr(value, "item"):
        # numpy scalars
        return value.item()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


class JSONFormatter:
    """Formats run payloads as JSON."""

    def __init__(self, indent: int = 2):
        self.indent = indent

    def format(self, payload: dict) -> str:
        return json.dumps(payload, indent=self.indent, sort_keys=True, default=_encode) + "\n"
