"""Numerical roots of rational polynomials."""

from __future__ import annotations

import logging
import math
from typing import List

import mpmath

from exactalg.poly import Poly, factor_squarefree_rational
from utils.errors import NoConvergenceError

logger = logging.getLogger(__name__)

#: Iteration cap handed to mpmath's Durand-Kerner implementation
MAX_ROOT_STEPS = 200


def _digits_for(precision: float) -> int:
    return max(20, int(-math.log10(precision)) + 15)


def _factor_roots(factor: Poly, precision: float) -> List[complex]:
    if factor.degree == 1:
        return [complex(-factor.coefficient(0) / factor.coefficient(1))]
    dps = _digits_for(precision)
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(factor.coefficients)]
        try:
            roots, err = mpmath.polyroots(
                coeffs, maxsteps=MAX_ROOT_STEPS, extraprec=4 * dps, error=True
            )
        except mpmath.libmp.NoConvergence as exc:
            raise NoConvergenceError(
                "polynomial root finder", MAX_ROOT_STEPS, float("inf"), polynomial=str(factor)
            ) from exc
        if err > precision:
            raise NoConvergenceError(
                "polynomial root finder", MAX_ROOT_STEPS, float(err), polynomial=str(factor)
            )
        return [complex(r) for r in roots]


def complex_roots(f: Poly, precision: float = 1e-12) -> List[complex]:
    """All complex roots of ``f`` repeated by multiplicity.

    Each irreducible factor is solved separately, so repeated roots are
    returned exactly repeated and every root is simple for the solver.
    The residual ``|f_i(r)|`` of every root is checked against
    ``precision * (1 + max|coeff|)``.
    """
    if f.is_zero() or f.degree < 1:
        raise ValueError("complex_roots needs a polynomial of positive degree")
    _, factors = factor_squarefree_rational(f)
    roots: List[complex] = []
    for factor, mult in factors:
        found = _factor_roots(factor, precision)
        scale = 1.0 + factor.height()
        for r in found:
            residual = abs(factor(r))
            bound = precision * scale * max(1.0, abs(r)) ** factor.degree
            if residual > bound:
                raise NoConvergenceError(
                    "polynomial root finder", MAX_ROOT_STEPS, residual, polynomial=str(factor)
                )
        roots.extend(r for r in found for _ in range(mult))
    roots.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    logger.debug(f"complex_roots: {len(roots)} roots of a degree {f.degree} polynomial")
    return roots
