"""Exact scalars, polynomials, rational functions and Sturm root counting.

Exact scalars are :class:`fractions.Fraction` throughout.
"""

from .linalg import solve_left, solve_parametric, substitute, vec_mat
from .polynomial import Polynomial, as_fraction, poly_gcd, square_free_part
from .ratfunc import PoleError, RationalFunction
from .sturm import count_real_roots, count_roots_between, isolate_real_roots, sign_variations, sturm_chain

__all__ = [
    "Polynomial",
    "RationalFunction",
    "PoleError",
    "as_fraction",
    "poly_gcd",
    "square_free_part",
    "solve_left",
    "solve_parametric",
    "substitute",
    "vec_mat",
    "sturm_chain",
    "sign_variations",
    "count_real_roots",
    "count_roots_between",
    "isolate_real_roots",
]
