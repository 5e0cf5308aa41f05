"""
Property-based tests: symmetries of the exact counts and identities of the
asymptotic formulas, on inputs drawn by hypothesis.
"""

import math
from fractions import Fraction
from functools import lru_cache

from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from src.asympt import aggregate_exponent, ransplit_prediction, rprime, summation_bounds
from src.core import BipartiteGraph, make_spec, transpose_spec
from src.exact import (
    brute_force_count,
    count_disjoint_extensions,
    count_factorisations,
    enumerate_semiregular,
    exact_disjoint_probability,
)
from src.numeric import LogValue
from src.switching import Labeling, relabel


@st.composite
def specs(draw, max_side: int = 4):
    """Valid (m, n, s) with at least two factors and every s_i*m/n integral."""
    sides = range(1, max_side + 1)
    m, n = draw(st.sampled_from([(m, n) for m in sides for n in sides if math.gcd(m, n) >= 2]))
    step = n // math.gcd(m, n)
    units = n // step
    parts = draw(st.integers(2, min(units, 3)))
    cuts = sorted(draw(st.sets(st.integers(1, units - 1), min_size=parts - 1, max_size=parts - 1)))
    sizes = [b - a for a, b in zip([0, *cuts], [*cuts, units])]
    return make_spec(m, n, [size * step for size in sizes])


@st.composite
def summation_inputs(draw):
    Z = draw(st.integers(2, 12))
    chat = draw(st.floats(0.01, 0.33))
    A = [draw(st.floats(0.0, chat * Z * 0.999)) for _ in range(Z)]
    B = []
    for i, a in enumerate(A, start=1):
        bound = 0.999 * chat / a if a > 0 else 1.0
        upper = min(bound, 1 / (i - 1)) if i > 1 else bound
        B.append(draw(st.floats(-bound, upper)))
    return A, B, Z, chat


class TestCountSymmetries:
    """The exact count is invariant under relabelling sides and colours."""

    @settings(max_examples=40, deadline=None)
    @given(specs())
    def test_transpose(self, spec):
        assert count_factorisations(spec) == count_factorisations(transpose_spec(spec))

    @settings(max_examples=40, deadline=None)
    @given(specs(), st.randoms(use_true_random=False))
    def test_colour_permutation(self, spec, random):
        shuffled = list(spec.s)
        random.shuffle(shuffled)
        assert count_factorisations(spec) == count_factorisations(make_spec(spec.m, spec.n, shuffled))

    @settings(max_examples=25, deadline=None)
    @given(specs(max_side=3))
    def test_matches_brute_force(self, spec):
        assert count_factorisations(spec) == brute_force_count(spec)


class TestLogValueArithmetic:
    """LogValue arithmetic agrees with exact integer arithmetic."""

    @given(st.integers(1, 10**30), st.integers(1, 10**30))
    def test_product(self, a, b):
        product = LogValue.from_number(a) * LogValue.from_number(b)
        assert abs(product.ln - mp.log(a * b)) < mp.mpf(10) ** -30

    @given(st.integers(1, 10**12), st.integers(1, 10**12))
    def test_sum_and_difference(self, a, b):
        total = LogValue.from_number(a) + LogValue.from_number(b)
        assert abs(total.ln - mp.log(a + b)) < mp.mpf(10) ** -25
        difference = LogValue.from_number(a) - LogValue.from_number(b)
        assert difference.sign == (a > b) - (a < b)


class TestFormulaIdentities:
    """Identities that hold exactly for the closed forms."""

    @settings(max_examples=60, deadline=None)
    @given(summation_inputs())
    def test_summation_bracket(self, inputs):
        assert summation_bounds(*inputs).bracket_holds

    @given(
        st.integers(2, 40),
        st.integers(2, 40),
        st.lists(st.fractions(Fraction(0), Fraction(1, 4), max_denominator=50), min_size=1, max_size=4),
        st.sampled_from(["silver", "mw"]),
    )
    def test_aggregate_telescopes(self, m, n, lams, variant):
        assert aggregate_exponent(m, n, lams, variant).relative_difference <= 1e-12

    @settings(deadline=None)
    @given(st.integers(4, 30), st.lists(st.integers(1, 3), min_size=1, max_size=3))
    def test_ransplit_is_a_rprime_quotient(self, n, sub):
        if sum(sub) >= n:
            sub = [1]
        total = sum(sub)
        split = rprime(make_spec(n, n, [n - total, *sub]))
        whole = rprime(make_spec(n, n, [n - total, total]))
        assert abs(ransplit_prediction(n, n, sub).ln - (split.ln - whole.ln)) < 1e-20


SEMIREGULAR_SHAPES = [(2, 4), (4, 2), (3, 3), (4, 4), (3, 6)]


@lru_cache(maxsize=None)
def _all_semiregular(m: int, n: int, d: int) -> tuple[BipartiteGraph, ...]:
    return tuple(enumerate_semiregular(m, n, d))


@st.composite
def semiregular_graphs(draw, shapes=SEMIREGULAR_SHAPES):
    """A uniformly chosen (m, n, d/n)-semiregular graph on a small shape."""
    m, n = draw(st.sampled_from(shapes))
    d = draw(st.sampled_from([d for d in range(n + 1) if (d * m) % n == 0]))
    return draw(st.sampled_from(_all_semiregular(m, n, d)))


@st.composite
def labelings(draw, m: int, n: int):
    sigma = draw(st.permutations(range(m)))
    tau = draw(st.permutations(range(n)))
    return Labeling(tuple(sigma), tuple(tau))


class TestComplementSymmetry:
    """The complement factor is an ordinary colour and empty factors are inert."""

    @settings(max_examples=40, deadline=None)
    @given(specs(), st.integers(1, 2))
    def test_empty_factors_fold_in_and_out(self, spec, extra):
        padded = make_spec(spec.m, spec.n, [*spec.s, *([0] * extra)])
        assert count_factorisations(padded) == count_factorisations(spec)

    @settings(max_examples=40, deadline=None)
    @given(specs())
    def test_complement_can_be_any_position(self, spec):
        complement, *rest = spec.s
        moved = make_spec(spec.m, spec.n, [*rest, complement])
        assert count_factorisations(moved) == count_factorisations(spec)

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(SEMIREGULAR_SHAPES), st.data())
    def test_graph_and_complement_counts_agree(self, shape, data):
        m, n = shape
        d = data.draw(st.sampled_from([d for d in range(n + 1) if (d * m) % n == 0]))
        graphs = _all_semiregular(m, n, d)
        complements = _all_semiregular(m, n, n - d)
        assert len(graphs) == len(complements)
        assert count_factorisations(make_spec(m, n, [n - d, d])) == len(graphs)


class TestRelabellingInvariance:
    """Disjointness counts depend on the graphs only up to relabelling."""

    @settings(max_examples=30, deadline=None)
    @given(semiregular_graphs(), st.data())
    def test_disjoint_extensions(self, d, data):
        lab = data.draw(labelings(d.m, d.n))
        s_h = data.draw(st.sampled_from([s for s in range(d.n + 1) if (s * d.m) % d.n == 0]))
        assert count_disjoint_extensions(relabel(d, lab), s_h) == count_disjoint_extensions(d, s_h)

    @settings(max_examples=30, deadline=None)
    @given(semiregular_graphs(shapes=[(3, 3), (4, 4), (2, 4)]), st.data())
    def test_exact_disjoint_probability(self, d, data):
        m, n = d.shape
        h = data.draw(semiregular_graphs(shapes=[(m, n)]))
        lab_d = data.draw(labelings(m, n))
        lab_h = data.draw(labelings(m, n))
        expected = exact_disjoint_probability(d, h)
        assert exact_disjoint_probability(relabel(d, lab_d), relabel(h, lab_h)) == expected
        assert exact_disjoint_probability(relabel(d, lab_d), h) == expected
