"""Exact toolkit for checking root criteria of Bernstein-Sato polynomials.

Covers Weyl-algebra calculus on f^s, left-ideal membership tests, hyperplane
arrangement analysis (dense edges, nonresonance, epsilon weights, residues),
lattice invariants and Euler-relation screening for homogeneous polynomials.
"""

from .arrangement import Arrangement, PreconditionError, analyze
from .fs import BSPair, FsElement, apply_to_fs, bs_pair_check, euler_root_witness
from .homogeneous import homogeneous_root_screen, euler_relation_find
from .lattice import char_poly, chi_projective, lattice_report, os_nbc
from .parsing import ParseError, parse_operator, parse_polynomial
from .polynomial import Polynomial, SPolynomial
from .weyl import WeylOperator, in_ideal_Dx, sigma_invariant, to_antinormal

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "PreconditionError", "analyze",
    "BSPair", "FsElement", "apply_to_fs", "bs_pair_check", "euler_root_witness",
    "homogeneous_root_screen", "euler_relation_find",
    "char_poly", "chi_projective", "lattice_report", "os_nbc",
    "ParseError", "parse_operator", "parse_polynomial",
    "Polynomial", "SPolynomial",
    "WeylOperator", "in_ideal_Dx", "sigma_invariant", "to_antinormal",
]
