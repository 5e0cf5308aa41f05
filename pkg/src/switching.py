"""
Random relabellings of a graph H against a fixed graph D.

A labeling (sigma, tau) sends edge (u, v) of H to (sigma(u), tau(v)). The
labelings are grouped by the number t of edges the relabelled H shares with
D, and neighbouring classes are linked by switchings: transposition pairs
(a e)(b f) applied to the relabelled H that destroy or create exactly the
common edge ab.
"""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Optional, Sequence

import numpy as np
from mpmath import mp

from .core import BipartiteGraph
from .errors import TooLargeError, ValidationError, ValidationErrorType
from .numeric import to_fraction, to_mpf

LABELING_LIMIT = 10**8
BALANCE_LIMIT = 10**6
MC_BLOCK = 4096


def _check_permutation(p: Sequence[int], size: int, side: str) -> tuple[int, ...]:
    p = tuple(p)
    if len(p) != size:
        raise ValidationError.from_type(
            ValidationErrorType.LENGTH_MISMATCH, f"{side} has length {len(p)}, expected {size}"
        )
    if sorted(p) != list(range(size)):
        raise ValidationError.from_type(ValidationErrorType.INVALID_PERMUTATION, f"{side}={list(p)}")
    return p


class SwitchDirection(StrEnum):
    FORWARD = "forward"
    REVERSE = "reverse"


@dataclass(frozen=True)
class SwitchMove:
    """The permutation (a e)(b f) with a, e in V1 and b, f in V2."""

    direction: SwitchDirection
    a: int
    e: int
    b: int
    f: int

    def __post_init__(self):
        if self.a == self.e or self.b == self.f:
            raise ValidationError.from_type(
                ValidationErrorType.INVALID_ARGUMENT, f"a={self.a}, e={self.e}, b={self.b}, f={self.f}"
            )


@dataclass(frozen=True)
class Labeling:
    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", _check_permutation(self.sigma, len(self.sigma), "sigma"))
        object.__setattr__(self, "tau", _check_permutation(self.tau, len(self.tau), "tau"))

    @classmethod
    def identity(cls, m: int, n: int) -> "Labeling":
        return cls(tuple(range(m)), tuple(range(n)))

    def inverse(self) -> "Labeling":
        sigma = [0] * len(self.sigma)
        tau = [0] * len(self.tau)
        for u, image in enumerate(self.sigma):
            sigma[image] = u
        for v, image in enumerate(self.tau):
            tau[image] = v
        return Labeling(tuple(sigma), tuple(tau))

    def compose_switch(self, move: SwitchMove) -> "Labeling":
        """The labeling reached by applying ``move`` after this one."""

        def swap(x: int, p: int, q: int) -> int:
            return q if x == p else p if x == q else x

        return Labeling(
            tuple(swap(x, move.a, move.e) for x in self.sigma),
            tuple(swap(x, move.b, move.f) for x in self.tau),
        )


def relabel(h: BipartiteGraph, lab: Labeling) -> BipartiteGraph:
    if len(lab.sigma) != h.m or len(lab.tau) != h.n:
        raise ValidationError.from_type(
            ValidationErrorType.LENGTH_MISMATCH,
            f"labeling of size ({len(lab.sigma)}, {len(lab.tau)}) for graph {h.shape}",
        )
    rows = [0] * h.m
    for u, row in enumerate(h.rows):
        image = 0
        for v in range(h.n):
            if row >> v & 1:
                image |= 1 << lab.tau[v]
        rows[lab.sigma[u]] = image
    return BipartiteGraph(h.m, h.n, tuple(rows))


def _check_same_shape(d: BipartiteGraph, h: BipartiteGraph) -> None:
    if d.shape != h.shape:
        raise ValidationError.from_type(
            ValidationErrorType.SHAPE_MISMATCH, f"D is {d.shape}, H is {h.shape}"
        )


def _common_rows(d_rows: Sequence[int], h_rows: Sequence[int]) -> tuple[int, ...]:
    return tuple(x & y for x, y in zip(d_rows, h_rows))


def _rows_have_two_path(rows: Sequence[int]) -> bool:
    """True if some vertex on either side is incident to two of the edges."""
    seen = 0
    for row in rows:
        if row.bit_count() > 1 or seen & row:
            return True
        seen |= row
    return False


def common_edges(d: BipartiteGraph, h: BipartiteGraph) -> int:
    _check_same_shape(d, h)
    return sum(row.bit_count() for row in _common_rows(d.rows, h.rows))


def has_common_two_path(d: BipartiteGraph, h: BipartiteGraph) -> bool:
    """Whether D and H share a path of length 2, centred in V1 or in V2."""
    _check_same_shape(d, h)
    return _rows_have_two_path(_common_rows(d.rows, h.rows))


def m_threshold(m: int, n: int, lam_d: Fraction | int | str, lam_h: Fraction | int | str) -> int:
    """M = ceil(lam_d lam_h mn ln n)."""
    product = to_fraction(lam_d) * to_fraction(lam_h) * m * n
    return int(mp.ceil(to_mpf(product) * mp.log(n)))


def lrat_prediction(
    m: int, n: int, lam_d: Fraction | int | str, lam_h: Fraction | int | str, t: int
) -> float:
    """Main term of L(t)/L(t-1): (lam_d mn - t + 1)(lam_h mn - t + 1) / (t mn)."""
    if t < 1:
        raise ValidationError.from_type(ValidationErrorType.INVALID_ARGUMENT, f"t={t}")
    mn = m * n
    lam_d, lam_h = to_fraction(lam_d), to_fraction(lam_h)
    return float((lam_d * mn - t + 1) * (lam_h * mn - t + 1) / (t * mn))


@dataclass(frozen=True)
class LabelingClassTable:
    """
    Sizes L(t) of the labeling classes for t <= t_max.

    With ``enforce_no_two_path`` the labelings sharing a 2-path with D are
    left out of every class and counted in ``excluded``. Labelings with more
    than t_max common edges are counted in ``beyond``.
    """

    m: int
    n: int
    lam_d: Fraction
    lam_h: Fraction
    t_max: int
    enforce_no_two_path: bool
    counts: dict[int, int] = field(default_factory=dict)
    excluded: int = 0
    beyond: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values()) + self.excluded + self.beyond

    @property
    def m_threshold(self) -> int:
        return m_threshold(self.m, self.n, self.lam_d, self.lam_h)

    def L(self, t: int) -> int:
        return self.counts.get(t, 0)

    @property
    def T(self) -> int:
        """Sum of L(t) over t < M, truncated at t_max."""
        return sum(self.L(t) for t in range(min(self.m_threshold, self.t_max + 1)))

    def t_over_l0(self) -> Fraction:
        if self.L(0) == 0:
            raise ValidationError.from_type(ValidationErrorType.ZERO_DENOMINATOR, "L(0) = 0")
        return Fraction(self.T, self.L(0))

    def predicted_t_over_l0(self) -> float:
        return math.exp(float(self.lam_d * self.lam_h * self.m * self.n))

    def ratios(self) -> list[dict]:
        rows = []
        for t in range(1, self.t_max + 1):
            previous = self.L(t - 1)
            rows.append(
                {
                    "t": t,
                    "L_t": self.L(t),
                    "ratio_exact": Fraction(self.L(t), previous) if previous else None,
                    "ratio_predicted": lrat_prediction(self.m, self.n, self.lam_d, self.lam_h, t),
                }
            )
        return rows

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "t_max": self.t_max,
            "M": self.m_threshold,
            "enforce_no_two_path": self.enforce_no_two_path,
            "counts": {str(t): str(c) for t, c in sorted(self.counts.items())},
            "excluded": str(self.excluded),
            "beyond": str(self.beyond),
            "total": str(self.total),
        }


def _check_labeling_space(m: int, n: int, limit: int, what: str) -> None:
    size = math.factorial(m) * math.factorial(n)
    if size > limit:
        raise TooLargeError(size, limit, what)


def _pulled_back(d_rows: tuple[int, ...], tau: tuple[int, ...], n: int) -> tuple[int, ...]:
    """For each D row, the V2 vertices v whose image tau(v) is a D-neighbour."""
    pulled = []
    for row in d_rows:
        mask = 0
        for v in range(n):
            if row >> tau[v] & 1:
                mask |= 1 << v
        pulled.append(mask)
    return tuple(pulled)


def _classify_chunk(
    d_rows: tuple[int, ...],
    h_rows: tuple[int, ...],
    n: int,
    sigmas: list[tuple[int, ...]],
    t_max: int,
    enforce: bool,
) -> tuple[dict[int, int], int, int]:
    pulled = [_pulled_back(d_rows, tau, n) for tau in permutations(range(n))]
    counts: dict[int, int] = defaultdict(int)
    excluded = beyond = 0
    for sigma in sigmas:
        for back in pulled:
            common = [row & back[sigma[u]] for u, row in enumerate(h_rows)]
            # rows and columns of H are relabelled bijectively, so 2-paths are preserved
            if enforce and _rows_have_two_path(common):
                excluded += 1
                continue
            t = sum(row.bit_count() for row in common)
            if t > t_max:
                beyond += 1
            else:
                counts[t] += 1
    return dict(counts), excluded, beyond


def classify_labelings(
    d: BipartiteGraph,
    h: BipartiteGraph,
    t_max: Optional[int] = None,
    enforce_no_two_path: bool = True,
    workers: int = 1,
) -> LabelingClassTable:
    """
    Exact class sizes L(t) by enumerating all m!·n! labelings of H.

    Args:
        d: The fixed graph
        h: The graph being labelled, same shape as d
        t_max: Largest class tabulated (default min(M, |D|, |H|))
        enforce_no_two_path: Leave out labelings that share a 2-path with D
        workers: Worker processes over chunks of sigma

    Returns:
        LabelingClassTable whose classes, excluded and beyond counts add up to m!·n!
    """
    _check_same_shape(d, h)
    m, n = d.shape
    _check_labeling_space(m, n, LABELING_LIMIT, "labeling enumeration")
    lam_d, lam_h = d.density(), h.density()
    if t_max is None:
        t_max = min(m_threshold(m, n, lam_d, lam_h), d.edge_count, h.edge_count)

    sigmas = list(permutations(range(m)))
    if workers <= 1:
        results = [_classify_chunk(d.rows, h.rows, n, sigmas, t_max, enforce_no_two_path)]
    else:
        size = -(-len(sigmas) // workers)
        chunks = [sigmas[i : i + size] for i in range(0, len(sigmas), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(
                    _classify_chunk,
                    [d.rows] * len(chunks),
                    [h.rows] * len(chunks),
                    [n] * len(chunks),
                    chunks,
                    [t_max] * len(chunks),
                    [enforce_no_two_path] * len(chunks),
                )
            )

    counts: dict[int, int] = defaultdict(int)
    excluded = beyond = 0
    for chunk_counts, chunk_excluded, chunk_beyond in results:
        for t, c in chunk_counts.items():
            counts[t] += c
        excluded += chunk_excluded
        beyond += chunk_beyond
    return LabelingClassTable(
        m, n, lam_d, lam_h, t_max, enforce_no_two_path, dict(counts), excluded, beyond
    )


def _swap_rows(rows: Sequence[int], a: int, e: int, b: int, f: int) -> tuple[int, ...]:
    swapped = list(rows)
    swapped[a], swapped[e] = swapped[e], swapped[a]
    bit_b, bit_f = 1 << b, 1 << f
    for i, row in enumerate(swapped):
        if bool(row & bit_b) != bool(row & bit_f):
            swapped[i] = row ^ bit_b ^ bit_f
    return tuple(swapped)


def apply_switching(h: BipartiteGraph, move: SwitchMove) -> BipartiteGraph:
    """Apply (a e)(b f) to the vertices of an already labelled H."""
    for vertex, size in ((move.a, h.m), (move.e, h.m), (move.b, h.n), (move.f, h.n)):
        if not 0 <= vertex < size:
            raise ValidationError.from_type(
                ValidationErrorType.EDGE_OUT_OF_RANGE, f"vertex {vertex} in graph {h.shape}"
            )
    return BipartiteGraph(h.m, h.n, _swap_rows(h.rows, move.a, move.e, move.b, move.f))


def _switchings(
    d_rows: tuple[int, ...], h_rows: tuple[int, ...], m: int, n: int, direction: SwitchDirection
) -> Iterator[SwitchMove]:
    common = _common_rows(d_rows, h_rows)
    for a in range(m):
        for b in range(n):
            in_d = d_rows[a] >> b & 1
            in_h = h_rows[a] >> b & 1
            if direction == SwitchDirection.FORWARD and not (in_d and in_h):
                continue
            if direction == SwitchDirection.REVERSE and not (in_d and not in_h):
                continue
            target = list(common)
            if direction == SwitchDirection.FORWARD:
                target[a] &= ~(1 << b)
            else:
                target[a] |= 1 << b
            target = tuple(target)
            for e in range(m):
                if e == a:
                    continue
                for f in range(n):
                    if f == b or d_rows[e] >> f & 1:
                        continue
                    if direction == SwitchDirection.REVERSE and not h_rows[e] >> f & 1:
                        continue
                    after = _swap_rows(h_rows, a, e, b, f)
                    if _common_rows(d_rows, after) == target:
                        yield SwitchMove(direction, a, e, b, f)


def enumerate_switchings(
    d: BipartiteGraph, h_labeled: BipartiteGraph, direction: SwitchDirection | str
) -> list[SwitchMove]:
    """
    Every switching of the given direction from the labelled H.

    Forward: ab is a common edge, ef is not an edge of D, and afterwards the
    common edges are the same minus ab. Reverse: ab is in D but not H, ef is
    in H but not D, and afterwards the common edges are the same plus ab.
    """
    _check_same_shape(d, h_labeled)
    return list(
        _switchings(d.rows, h_labeled.rows, d.m, d.n, SwitchDirection(direction))
    )


@dataclass(frozen=True)
class SwitchBalance:
    """Per t >= 1: forward moves out of class t and reverse moves into it."""

    forward: dict[int, int]
    reverse: dict[int, int]

    def balanced(self) -> bool:
        keys = set(self.forward) | set(self.reverse)
        return all(self.forward.get(t, 0) == self.reverse.get(t, 0) for t in keys)

    def to_dict(self) -> dict:
        keys = sorted(set(self.forward) | set(self.reverse))
        return {
            str(t): {"forward": self.forward.get(t, 0), "reverse": self.reverse.get(t, 0)}
            for t in keys
        }


def switching_balance(d: BipartiteGraph, h: BipartiteGraph) -> SwitchBalance:
    """
    Double count the switchings between neighbouring classes over every
    labeling. Only reverse moves that land on a labeling with no common
    2-path are counted, so each total pairs with its forward counterpart.
    """
    _check_same_shape(d, h)
    m, n = d.shape
    _check_labeling_space(m, n, BALANCE_LIMIT, "switching balance")
    forward: dict[int, int] = defaultdict(int)
    reverse: dict[int, int] = defaultdict(int)
    for sigma in permutations(range(m)):
        for tau in permutations(range(n)):
            labeled = relabel(h, Labeling(sigma, tau)).rows
            common = _common_rows(d.rows, labeled)
            if _rows_have_two_path(common):
                continue
            t = sum(row.bit_count() for row in common)
            if t >= 1:
                forward[t] += sum(
                    1 for _ in _switchings(d.rows, labeled, m, n, SwitchDirection.FORWARD)
                )
            for move in _switchings(d.rows, labeled, m, n, SwitchDirection.REVERSE):
                after = _swap_rows(labeled, move.a, move.e, move.b, move.f)
                if not _rows_have_two_path(_common_rows(d.rows, after)):
                    reverse[t + 1] += 1
    return SwitchBalance(dict(forward), dict(reverse))


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    stderr: float
    successes: int
    trials: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "stderr": self.stderr,
            "successes": self.successes,
            "trials": self.trials,
            "seed": self.seed,
        }


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def _mc_block(
    edge_lists: list[tuple[np.ndarray, np.ndarray]], m: int, n: int, seed: int, block: int, size: int
) -> int:
    rng = _block_rng(seed, block)
    cells = []
    for us, vs in edge_lists:
        sigma = rng.permuted(np.tile(np.arange(m), (size, 1)), axis=1)
        tau = rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)
        cells.append(sigma[:, us] * n + tau[:, vs])
    stacked = np.sort(np.concatenate(cells, axis=1), axis=1)
    if stacked.shape[1] < 2:
        return size
    clash = np.any(stacked[:, 1:] == stacked[:, :-1], axis=1)
    return int(size - np.count_nonzero(clash))


def monte_carlo_disjoint(
    graphs: Sequence[BipartiteGraph], trials: int, seed: int, workers: int = 1
) -> MonteCarloResult:
    """
    Estimate the probability that independently relabelled copies of the
    graphs are pairwise edge-disjoint.

    Trials run in fixed blocks, each with its own Philox stream keyed by
    (seed, block), so the result does not depend on ``workers``.

    Args:
        graphs: Two or more graphs of one shape
        trials: Number of independent relabellings
        seed: Root seed of the block streams
        workers: Worker processes over blocks

    Returns:
        MonteCarloResult with the estimate, its standard error and the raw counts
    """
    graphs = list(graphs)
    if len(graphs) < 2:
        raise ValidationError.from_type(
            ValidationErrorType.INVALID_ARGUMENT, f"need at least 2 graphs, got {len(graphs)}"
        )
    if trials < 1:
        raise ValidationError.from_type(ValidationErrorType.INVALID_ARGUMENT, f"trials={trials}")
    for g in graphs[1:]:
        _check_same_shape(graphs[0], g)
    m, n = graphs[0].shape

    edge_lists = []
    for g in graphs:
        edges = g.edges()
        us = np.array([u for u, _ in edges], dtype=np.int64)
        vs = np.array([v for _, v in edges], dtype=np.int64)
        edge_lists.append((us, vs))

    blocks = [(b, min(MC_BLOCK, trials - b * MC_BLOCK)) for b in range(-(-trials // MC_BLOCK))]
    if workers <= 1 or len(blocks) == 1:
        successes = sum(_mc_block(edge_lists, m, n, seed, b, size) for b, size in blocks)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            successes = sum(
                pool.map(
                    _mc_block,
                    [edge_lists] * len(blocks),
                    [m] * len(blocks),
                    [n] * len(blocks),
                    [seed] * len(blocks),
                    [b for b, _ in blocks],
                    [size for _, size in blocks],
                )
            )
    p = successes / trials
    return MonteCarloResult(p, math.sqrt(p * (1 - p) / trials), successes, trials, seed)
