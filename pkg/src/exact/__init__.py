"""
Exact counting: factorisations, Latin rectangles, forbidden-edge extensions,
relabelling probabilities and the brute-force oracles that certify them.
"""

from .budget import BudgetTracker, CountBudget
from .extensions import average_split_count, count_disjoint_extensions
from .factorisations import (
    CountResult,
    ResidualState,
    count_factorisations,
    count_factorisations_detailed,
)
from .latin import count_latin_by_row_extension, count_latin_rectangles
from .lattice import exact_lattice_count, lattice_point_probability
from .oracles import brute_force_count, derangements, enumerate_semiregular
from .relabelling import exact_disjoint_probability

__all__ = [
    "BudgetTracker",
    "CountBudget",
    "CountResult",
    "ResidualState",
    "average_split_count",
    "brute_force_count",
    "count_disjoint_extensions",
    "count_factorisations",
    "count_factorisations_detailed",
    "count_latin_by_row_extension",
    "count_latin_rectangles",
    "derangements",
    "enumerate_semiregular",
    "exact_disjoint_probability",
    "exact_lattice_count",
    "lattice_point_probability",
]
