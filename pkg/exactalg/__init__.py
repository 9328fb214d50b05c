"""Exact arithmetic over the rationals: polynomials, rational functions, places."""

from .poly import BigRat, Poly, factor_squarefree_rational, is_irreducible, squarefree_parts
from .ratfunc import RatFunc, ratfunc_arith
from .places import Place, places_of, poly_order, principal_divisor_degree, reduce_at, valuation
from .roots import complex_roots
from .expressions import parse_polynomial, parse_ratfunc

__all__ = [
    "BigRat",
    "Poly",
    "RatFunc",
    "Place",
    "ratfunc_arith",
    "valuation",
    "poly_order",
    "places_of",
    "reduce_at",
    "principal_divisor_degree",
    "factor_squarefree_rational",
    "squarefree_parts",
    "is_irreducible",
    "complex_roots",
    "parse_polynomial",
    "parse_ratfunc",
]
