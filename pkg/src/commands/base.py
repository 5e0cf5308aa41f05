"""
Base interface for subcommands, plus the argument helpers they share.
"""

from __future__ import annotations

import argparse
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Optional

from ..core import BipartiteGraph, load_graph
from ..errors import ValidationError, ValidationErrorType

if TYPE_CHECKING:
    from ..runner import RunConfig


@dataclass
class CommandOutput:
    """A command's result: the JSON payload and, optionally, a record table."""

    payload: dict[str, Any]
    rows: Optional[list[dict[str, Any]]] = None
    ok: bool = True
    title: str = ""

    def table(self) -> list[dict[str, Any]]:
        """Records for CSV output. Without explicit rows, the scalar payload fields."""
        if self.rows is not None:
            return self.rows
        return [
            {key: value for key, value in self.payload.items() if not isinstance(value, (dict, list))}
        ]


class Command(ABC):
    """Abstract base class for all subcommands."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Subcommand name on the command line."""

    @property
    @abstractmethod
    def help(self) -> str:
        """One-line description for --help."""

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Register the subcommand's own flags."""

    @abstractmethod
    def run(self, config: "RunConfig") -> CommandOutput:
        """Execute and return the result. Library errors propagate."""


def parse_int_list(text: str) -> list[int]:
    """'2,1,1' -> [2, 1, 1]. Decimals are rejected."""
    values = []
    for part in text.split(","):
        part = part.strip()
        try:
            values.append(int(part))
        except ValueError:
            raise ValidationError.from_type(
                ValidationErrorType.NON_INTEGRAL, f"{part!r} in {text!r}"
            ) from None
    return values


def density(degree: Optional[int], n: Optional[int], flag: str) -> Fraction:
    """Density degree/n from two integer flags."""
    if degree is None or n is None:
        raise ValidationError.from_type(
            ValidationErrorType.INVALID_ARGUMENT, f"{flag} and --n are required"
        )
    if n < 1:
        raise ValidationError.from_type(ValidationErrorType.NON_POSITIVE_SIZE, f"n={n}")
    return Fraction(degree, n)


def require(value: Any, flag: str) -> Any:
    if value is None:
        raise ValidationError.from_type(ValidationErrorType.INVALID_ARGUMENT, f"{flag} is required")
    return value


def choose(enum: type[StrEnum], value: str, flag: str) -> StrEnum:
    try:
        return enum(value)
    except ValueError:
        allowed = ", ".join(member.value for member in enum)
        raise ValidationError.from_type(
            ValidationErrorType.INVALID_ARGUMENT, f"{flag}={value!r}; expected one of {allowed}"
        ) from None


def _size_pair(text: str) -> tuple[int, int]:
    m, _, n = text.partition("x")
    return parse_int_list(m)[0], parse_int_list(n or m)[0]


def resolve_graph(ref: str) -> BipartiteGraph:
    """
    A graph from a JSON file path or a builtin reference:
    ``matching:N[:SHIFT]``, ``circulant:N:S1,S2,...``, ``complete:MxN``,
    ``empty:MxN``.
    """
    kind, _, rest = ref.partition(":")
    if not rest:
        return load_graph(ref)
    if kind == "matching":
        n, _, shift = rest.partition(":")
        return BipartiteGraph.perfect_matching(parse_int_list(n)[0], parse_int_list(shift)[0] if shift else 0)
    if kind == "circulant":
        n, _, shifts = rest.partition(":")
        return BipartiteGraph.circulant(parse_int_list(n)[0], parse_int_list(shifts or "0"))
    if kind == "complete":
        return BipartiteGraph.complete(*_size_pair(rest))
    if kind == "empty":
        return BipartiteGraph.empty(*_size_pair(rest))
    return load_graph(ref)
