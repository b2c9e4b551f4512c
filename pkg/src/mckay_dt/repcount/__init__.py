"""Finite-field point counts used as ground truth for the motive formulas."""

from .counting import CountReport, count_potential_fiber, count_preprojective, potential_fiber_distribution
from .field import GF, field
from .kac import IntPolynomial, KacTable, aut_motive, count_automorphisms, interpolate_kac, kac_bruteforce

__all__ = [
    "CountReport",
    "count_potential_fiber",
    "count_preprojective",
    "potential_fiber_distribution",
    "GF",
    "field",
    "IntPolynomial",
    "KacTable",
    "aut_motive",
    "count_automorphisms",
    "interpolate_kac",
    "kac_bruteforce",
]
