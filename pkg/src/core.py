"""
Domain types for factorisations of K_{m,n} and their validation.

Vertices of V1 are 0..m-1 and vertices of V2 are 0..n-1. A factor is given by
its V1-side degree s_i; the V2-side degree t_i = s_i*m/n and the density
lambda_i = s_i/n are derived.
"""

from __future__ import annotations

import json
import operator
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import ValidationError, ValidationErrorType


def _as_int(value: Any, what: str) -> int:
    if isinstance(value, bool):
        raise ValidationError.from_type(ValidationErrorType.NON_INTEGRAL, f"{what}={value!r}")
    try:
        return operator.index(value)
    except TypeError:
        raise ValidationError.from_type(
            ValidationErrorType.NON_INTEGRAL, f"{what}={value!r}"
        ) from None


@dataclass(frozen=True)
class FactorisationSpec:
    """Validated (m, n, s0..sk). Build with :func:`make_spec`."""

    m: int
    n: int
    s: tuple[int, ...]
    strict: bool = False

    @property
    def k(self) -> int:
        return len(self.s) - 1

    @property
    def t(self) -> tuple[int, ...]:
        return tuple(si * self.m // self.n for si in self.s)

    @property
    def densities(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(si, self.n) for si in self.s)

    @property
    def edge_counts(self) -> tuple[int, ...]:
        """lambda_i * m * n for every factor."""
        return tuple(si * self.m for si in self.s)

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "n": self.n,
            "s": list(self.s),
            "t": list(self.t),
            "densities": [str(d) for d in self.densities],
        }


def make_spec(m: int, n: int, s: Iterable[int], strict: bool = False) -> FactorisationSpec:
    """
    Validate a degree specification.

    Args:
        m: Size of V1
        n: Size of V2
        s: V1-side degrees s_0..s_k, s_0 being the complement factor
        strict: Reject empty non-complement factors

    Returns:
        The validated spec, with the V2-side degrees t_i = s_i*m/n filled in

    Raises ValidationError for non-positive sizes, an empty or negative degree
    list, degrees not summing to n, or a V2-side degree s_i*m/n that is not an
    integer.
    """
    m = _as_int(m, "m")
    n = _as_int(n, "n")
    if m < 1 or n < 1:
        raise ValidationError.from_type(ValidationErrorType.NON_POSITIVE_SIZE, f"m={m}, n={n}")

    degrees = tuple(_as_int(si, "degree") for si in s)
    if not degrees:
        raise ValidationError.from_type(ValidationErrorType.EMPTY_DEGREES)

    for index, si in enumerate(degrees):
        if si < 0:
            raise ValidationError.from_type(
                ValidationErrorType.NEGATIVE_DEGREE, f"s{index}={si}", factor=index
            )

    if sum(degrees) != n:
        raise ValidationError.from_type(
            ValidationErrorType.DEGREE_SUM_MISMATCH,
            f"sum={sum(degrees)}, n={n}",
            degrees=list(degrees),
        )

    for index, si in enumerate(degrees):
        if (si * m) % n != 0:
            raise ValidationError.from_type(
                ValidationErrorType.INTEGRALITY_VIOLATION,
                f"s{index}*m/n = {si}*{m}/{n}",
                factor=index,
            )

    if strict:
        for index, si in enumerate(degrees[1:], start=1):
            if si == 0:
                raise ValidationError.from_type(
                    ValidationErrorType.NOT_STRICT, f"s{index}=0", factor=index
                )

    return FactorisationSpec(m, n, degrees, strict)


def transpose_spec(spec: FactorisationSpec) -> FactorisationSpec:
    """Swap the roles of V1 and V2."""
    return make_spec(spec.n, spec.m, spec.t, spec.strict)


@dataclass(frozen=True)
class BipartiteGraph:
    """
    A bipartite graph on (V1, V2) stored as one bitmask per V1 vertex.

    Bit j of ``rows[i]`` is set iff (i, j) is an edge.
    """

    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValidationError.from_type(
                ValidationErrorType.NON_POSITIVE_SIZE, f"m={self.m}, n={self.n}"
            )
        if len(self.rows) != self.m:
            raise ValidationError.from_type(
                ValidationErrorType.SHAPE_MISMATCH, f"{len(self.rows)} rows for m={self.m}"
            )
        limit = 1 << self.n
        for i, row in enumerate(self.rows):
            if row < 0 or row >= limit:
                raise ValidationError.from_type(
                    ValidationErrorType.EDGE_OUT_OF_RANGE, f"row {i} has a neighbour >= n={self.n}"
                )

    @classmethod
    def from_edges(cls, m: int, n: int, edges: Iterable[Sequence[int]]) -> "BipartiteGraph":
        rows = [0] * m
        for edge in edges:
            if not isinstance(edge, (list, tuple)) or len(edge) != 2:
                raise ValidationError.from_type(
                    ValidationErrorType.GRAPH_FILE, f"edge {list(edge)!r} is not a pair"
                )
            i, j = (_as_int(x, "edge endpoint") for x in edge)
            if not (0 <= i < m and 0 <= j < n):
                raise ValidationError.from_type(
                    ValidationErrorType.EDGE_OUT_OF_RANGE, f"({i}, {j}) in K_{{{m},{n}}}"
                )
            bit = 1 << j
            if rows[i] & bit:
                raise ValidationError.from_type(ValidationErrorType.DUPLICATE_EDGE, f"({i}, {j})")
            rows[i] |= bit
        return cls(m, n, tuple(rows))

    @classmethod
    def empty(cls, m: int, n: int) -> "BipartiteGraph":
        return cls(m, n, (0,) * m)

    @classmethod
    def complete(cls, m: int, n: int) -> "BipartiteGraph":
        return cls(m, n, ((1 << n) - 1,) * m)

    @classmethod
    def perfect_matching(cls, n: int, shift: int = 0) -> "BipartiteGraph":
        """The matching i -> (i + shift) mod n in K_{n,n}."""
        return cls.from_edges(n, n, ((i, (i + shift) % n) for i in range(n)))

    @classmethod
    def circulant(cls, n: int, shifts: Iterable[int]) -> "BipartiteGraph":
        """Union of the shifted perfect matchings; regular of degree len(shifts)."""
        return cls.from_edges(
            n, n, ((i, (i + shift) % n) for shift in shifts for i in range(n))
        )

    @classmethod
    def from_colour(cls, matrix: "ColourMatrix", colour: int) -> "BipartiteGraph":
        m, n = matrix.shape
        return cls(
            m,
            n,
            tuple(
                sum(1 << j for j, c in enumerate(row) if c == colour) for row in matrix.entries
            ),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Bitmask of V1 neighbours per V2 vertex."""
        cols = [0] * self.n
        for i, row in enumerate(self.rows):
            for j in range(self.n):
                if row >> j & 1:
                    cols[j] |= 1 << i
        return tuple(cols)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in range(self.n) if row >> j & 1]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def v1_degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def v2_degrees(self) -> list[int]:
        return [col.bit_count() for col in self.columns]

    def density(self) -> Fraction:
        return Fraction(self.edge_count, self.m * self.n)

    def semiregular_degree(self) -> int | None:
        """The common V1 degree if the graph is semiregular, else None."""
        degrees = set(self.v1_degrees())
        if len(degrees) != 1 or len(set(self.v2_degrees())) != 1:
            return None
        return degrees.pop()

    def to_dict(self) -> dict[str, Any]:
        return {"m": self.m, "n": self.n, "edges": [list(e) for e in self.edges()]}


def validate_semiregular(g: BipartiteGraph, d1: int) -> bool:
    """True iff every V1 degree is d1 and every V2 degree is d1*m/n."""
    if (d1 * g.m) % g.n != 0:
        return False
    d2 = d1 * g.m // g.n
    return all(d == d1 for d in g.v1_degrees()) and all(d == d2 for d in g.v2_degrees())


@dataclass(frozen=True)
class ColourMatrix:
    """An m x n array of colour indices, one per edge of K_{m,n}."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValidationError.from_type(ValidationErrorType.SHAPE_MISMATCH, "empty matrix")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValidationError.from_type(ValidationErrorType.SHAPE_MISMATCH, "ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "ColourMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]))


def validate_colouring(c: ColourMatrix, spec: FactorisationSpec) -> bool:
    """
    True iff every row holds s_i entries of colour i and every column t_i.

    A shape different from (m, n) or an entry outside 0..k is an input error,
    not a False answer.
    """
    if c.shape != (spec.m, spec.n):
        raise ValidationError.from_type(
            ValidationErrorType.SHAPE_MISMATCH, f"matrix {c.shape} vs spec {(spec.m, spec.n)}"
        )
    k = spec.k
    for row in c.entries:
        for colour in row:
            if not 0 <= colour <= k:
                raise ValidationError.from_type(ValidationErrorType.INVALID_COLOUR, f"{colour}")

    s_target = Counter({colour: si for colour, si in enumerate(spec.s) if si})
    t_target = Counter({colour: ti for colour, ti in enumerate(spec.t) if ti})

    if any(Counter(row) != s_target for row in c.entries):
        return False
    return all(Counter(column) == t_target for column in zip(*c.entries))


def load_graph(path: str | Path) -> BipartiteGraph:
    """Read the JSON graph format {"m": int, "n": int, "edges": [[i, j], ...]}."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValidationError.from_type(ValidationErrorType.GRAPH_FILE, f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError.from_type(
            ValidationErrorType.GRAPH_FILE, f"{path}: invalid JSON ({exc.msg})"
        ) from exc
    return graph_from_dict(data, str(path))


def graph_from_dict(data: Any, source: str = "<graph>") -> BipartiteGraph:
    if not isinstance(data, dict) or not {"m", "n", "edges"} <= data.keys():
        raise ValidationError.from_type(
            ValidationErrorType.GRAPH_FILE, f"{source}: expected keys m, n, edges"
        )
    if not isinstance(data["edges"], list):
        raise ValidationError.from_type(ValidationErrorType.GRAPH_FILE, f"{source}: edges must be a list")
    return BipartiteGraph.from_edges(_as_int(data["m"], "m"), _as_int(data["n"], "n"), data["edges"])


def dump_graph(graph: BipartiteGraph, path: str | Path | None = None) -> str:
    """Serialise to the JSON graph format; also write it when a path is given."""
    text = json.dumps(graph.to_dict(), sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
