"""Permutation polynomials over finite fields of odd characteristic and
their compositional inverses."""

from .gf import FieldCtx, FieldElement, field_create, quadratic_character
from .polyring import Poly, brute_force_inverse, lagrange_interpolate

__all__ = [
    "FieldCtx",
    "FieldElement",
    "Poly",
    "brute_force_inverse",
    "field_create",
    "lagrange_interpolate",
    "quadratic_character",
]

__version__ = "0.1.0"
