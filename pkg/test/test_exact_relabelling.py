"""
Tests for disjoint relabellings, forbidden-edge extensions and the lattice
walk count.
"""

import math
from fractions import Fraction

import pytest

from src.core import BipartiteGraph, make_spec
from src.errors import TooLargeError, ValidationError, ValidationErrorType
from src.exact import (
    average_split_count,
    count_disjoint_extensions,
    count_factorisations,
    derangements,
    enumerate_semiregular,
    exact_disjoint_probability,
    exact_lattice_count,
    lattice_point_probability,
)
from src.exact.lattice import column_steps


class TestDisjointProbability:
    """Test the exact relabelling probability."""

    @pytest.mark.parametrize("n", range(2, 8))
    def test_two_matchings(self, n):
        matching = BipartiteGraph.perfect_matching(n)
        expected = Fraction(derangements(n), math.factorial(n))
        assert exact_disjoint_probability(matching, matching) == expected

    def test_seven_matches_inverse_e(self):
        matching = BipartiteGraph.perfect_matching(7)
        probability = exact_disjoint_probability(matching, matching)
        assert probability == Fraction(1854, 5040)
        assert abs(float(probability) - math.exp(-1)) <= 1e-3

    def test_workers(self):
        d = BipartiteGraph.circulant(5, [0, 1])
        h = BipartiteGraph.perfect_matching(5, 2)
        assert exact_disjoint_probability(d, h, workers=2) == exact_disjoint_probability(d, h)

    def test_degenerate_graphs(self):
        matching = BipartiteGraph.perfect_matching(3)
        assert exact_disjoint_probability(BipartiteGraph.complete(3, 3), matching) == 0
        assert exact_disjoint_probability(BipartiteGraph.empty(3, 3), matching) == 1

    def test_shape_mismatch(self):
        with pytest.raises(ValidationError) as info:
            exact_disjoint_probability(BipartiteGraph.empty(2, 3), BipartiteGraph.empty(3, 2))
        assert info.value.error_type == ValidationErrorType.SHAPE_MISMATCH

    def test_too_large(self):
        matching = BipartiteGraph.perfect_matching(8)
        with pytest.raises(TooLargeError):
            exact_disjoint_probability(matching, matching)


class TestDisjointExtensions:
    """Test counting semiregular graphs that avoid D."""

    def test_matching_in_k55(self):
        assert count_disjoint_extensions(BipartiteGraph.perfect_matching(5), 1) == 44

    def test_matching_in_k44(self):
        assert count_disjoint_extensions(BipartiteGraph.perfect_matching(4), 1) == 9

    def test_empty_d_counts_all_graphs(self):
        assert count_disjoint_extensions(BipartiteGraph.empty(3, 3), 1) == 6
        assert count_disjoint_extensions(BipartiteGraph.empty(4, 4), 2) == 90

    def test_complement_of_d(self):
        d = BipartiteGraph.circulant(4, [0, 1])
        assert count_disjoint_extensions(d, 2) == 1
        assert count_disjoint_extensions(d, 3) == 0

    def test_zero_degree(self):
        assert count_disjoint_extensions(BipartiteGraph.perfect_matching(5), 0) == 1

    def test_depends_on_cycle_structure(self):
        eight_cycle = BipartiteGraph.circulant(4, [0, 1])
        two_squares = BipartiteGraph.from_edges(
            4, 4, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
        )
        assert count_disjoint_extensions(eight_cycle, 1) == 2
        assert count_disjoint_extensions(two_squares, 1) == 4

    def test_sum_over_d_is_a_factorisation_count(self):
        total = sum(count_disjoint_extensions(d, 1) for d in enumerate_semiregular(4, 4, 2))
        assert total == count_factorisations(make_spec(4, 4, [1, 1, 2]))

    def test_not_semiregular(self):
        d = BipartiteGraph.from_edges(3, 3, [(0, 0), (0, 1)])
        with pytest.raises(ValidationError) as info:
            count_disjoint_extensions(d, 1)
        assert info.value.error_type == ValidationErrorType.NOT_SEMIREGULAR

    def test_integrality(self):
        d = BipartiteGraph.empty(2, 4)
        with pytest.raises(ValidationError) as info:
            count_disjoint_extensions(d, 1)
        assert info.value.error_type == ValidationErrorType.INTEGRALITY_VIOLATION


class TestAverageSplitCount:
    """Test the ratio of split to unsplit factorisation counts."""

    def test_ratio(self):
        expected = Fraction(count_factorisations(make_spec(4, 4, [2, 1, 1])), 90)
        assert average_split_count(4, 4, [1, 1]) == expected

    def test_single_factor(self):
        assert average_split_count(4, 4, [2]) == 1

    def test_empty(self):
        with pytest.raises(ValidationError) as info:
            average_split_count(4, 4, [])
        assert info.value.error_type == ValidationErrorType.EMPTY_DEGREES


class TestLattice:
    """Test the lattice-walk count against the DP."""

    def test_column_steps(self):
        steps = column_steps(3, (1, 1, 1))
        assert len(steps) == 6
        assert all(len(step) == 4 for step in steps)

    @pytest.mark.parametrize("n", [3, 6, 9])
    def test_equals_factorisation_count(self, n):
        s = [n // 3] * 3
        assert exact_lattice_count(3, n, s) == count_factorisations(make_spec(3, n, s))

    def test_point_probability(self):
        assert lattice_point_probability(3, 3, [1, 1, 1]) == Fraction(12, 6**3)

    def test_two_factor(self):
        assert exact_lattice_count(4, 4, [2, 2]) == 90
