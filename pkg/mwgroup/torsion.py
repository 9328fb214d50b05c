"""Torsion detection for sections."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional

from mwgroup.points import SectionPoint, add
from surface.invariants import possibly_constant, surface_invariants
from utils.errors import BettiError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TorsionResult:
    is_torsion: bool
    order: Optional[int]
    #: naive heights of ``nP`` for the multiples that were built
    heights: tuple = ()
    #: infinite order is certified, by a positive canonical height or by
    #: degree growth beyond the search range
    proven_infinite: bool = False


def _naive(p: SectionPoint) -> Optional[int]:
    if p.is_zero:
        return None
    return p.x.degree


def quadratic_growth(heights: List[int]) -> bool:
    """Degrees increase with positive second differences over the last three terms."""
    if len(heights) < 3:
        return False
    a, b, c = heights[-3:]
    return a < b < c and (c - b) > (b - a)


def has_positive_height(p: SectionPoint) -> bool:
    """True when the exact canonical height certifies that ``p`` has infinite order.

    On a surface that is not constant the height pairing is positive
    definite modulo torsion, so ``h(P) > 0`` exactly for sections of
    infinite order. Surfaces that may be constant, and sections whose local
    data cannot be read off, give ``False``.
    """
    from mwgroup.heights import canonical_height_exact

    try:
        inv = surface_invariants(p.model)
        if possibly_constant(p.model, inv):
            return False
        return canonical_height_exact(p, inv=inv) > 0
    except BettiError as exc:
        logger.debug(f"canonical height unavailable for the torsion test: {exc}")
        return False


def is_torsion(p: SectionPoint, n_max: int = 12) -> TorsionResult:
    """Search for ``n <= n_max`` with ``nP = O``.

    A positive canonical height settles infinite order without building any
    multiple. Otherwise the multiples are built one by one; torsion sections
    have bounded height, so strictly quadratic degree growth of ``x(nP)`` at
    the end of the range is recorded as a proof of infinite order.
    """
    if p.is_zero:
        return TorsionResult(True, 1)
    if has_positive_height(p):
        logger.debug("positive canonical height: section has infinite order")
        return TorsionResult(False, None, (_naive(p),), True)
    heights: List[int] = []
    multiple = p
    for n in range(1, n_max + 1):
        if multiple.is_zero:
            logger.info(f"section has torsion order {n}")
            return TorsionResult(True, n, tuple(heights))
        heights.append(_naive(multiple))
        if n < n_max:
            multiple = add(multiple, p)
    proven = quadratic_growth(heights)
    logger.debug(f"no torsion up to {n_max}; naive heights {heights}")
    return TorsionResult(False, None, tuple(heights), proven)
