"""Torsion tangencies: zeros whose leaf is a torsion multisection."""

from __future__ import annotations

import dataclasses
import logging
from typing import Optional, Tuple

from analytic.betti import BettiCoords
from exactalg import Place, complex_roots, factor_squarefree_rational
from mwgroup.heights import local_intersection
from mwgroup.points import SectionPoint, multiply
from surface.minimal import fiber_at
from tangency.zeros import TangencyRecord

logger = logging.getLogger(__name__)

#: Distance to (0, 0) mod 1 accepted for ``n (r, s)``
TORSION_TOLERANCE = 1e-6

#: Distance between the zero and a root of the denominator of ``x(nP)``
ROOT_TOLERANCE = 1e-4


def torsion_order_candidate(betti: BettiCoords, n_max: int, tolerance: float = TORSION_TOLERANCE) -> Optional[Tuple[int, float]]:
    """Smallest ``n <= n_max`` with ``n (r, s)`` within ``tolerance`` of the origin."""
    origin = BettiCoords(0.0, 0.0)
    for n in range(1, n_max + 1):
        residual = BettiCoords(n * betti.r, n * betti.s).distance(origin)
        if residual <= tolerance:
            return n, residual
    return None


def confirm_torsion_tangency(point: SectionPoint, n: int, t0: Optional[complex]) -> bool:
    """True when ``nP`` meets ``O`` with multiplicity at least 2 over ``t0``."""
    q = multiply(point, n)
    if q.is_zero:
        return False
    if t0 is None:
        return local_intersection(q, fiber_at(q.model, Place.infinity())) >= 2
    if q.x.den.degree < 1:
        return False
    _, factors = factor_squarefree_rational(q.x.den)
    for fac, _mult in factors:
        if any(abs(root - t0) <= ROOT_TOLERANCE * (1 + abs(t0)) for root in complex_roots(fac)):
            return local_intersection(q, fiber_at(q.model, Place(fac))) >= 2
    return False


def classify_torsion_tangency(rec: TangencyRecord, model, point: SectionPoint, n_max: int) -> TangencyRecord:
    """Attach the torsion order of the leaf through ``rec`` when there is one."""
    if rec.betti is None:
        return rec
    candidate = torsion_order_candidate(rec.betti, n_max)
    if candidate is None:
        return dataclasses.replace(rec, torsion_candidate=None, torsion_confirmed=None)
    n, residual = candidate
    confirmed = confirm_torsion_tangency(point, n, rec.t0)
    logger.info(f"tangency at {rec.t0} lies on a {n}-torsion leaf (residual {residual:.2e}, confirmed={confirmed})")
    return dataclasses.replace(rec, torsion_candidate=candidate, torsion_confirmed=confirmed)
