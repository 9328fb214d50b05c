"""Local minimal models and fiber data at the places of the base."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from exactalg import Place, places_of
from exactalg.places import valuation_or_none
from surface.kodaira import KodairaType, classify_fiber
from surface.model import WeierstrassModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiberData:
    """Local data of the fiber over one place.

    ``u_order`` is the valuation of the scaling ``u`` with
    ``(A, B) = (u^4 A_min, u^6 B_min)``; it is negative when the input
    coefficients have poles at the place.
    """

    place: Place
    kodaira_type: KodairaType
    ord_a_min: Optional[int]
    ord_b_min: Optional[int]
    ord_delta_min: int
    u_order: int

    @property
    def component_count(self) -> int:
        return self.kodaira_type.component_count

    @property
    def component_group_order(self) -> int:
        return self.kodaira_type.component_group_order

    @property
    def is_bad(self) -> bool:
        return self.ord_delta_min > 0

    @property
    def degree(self) -> int:
        return self.place.degree


def _floor_div(value: Optional[int], k: int) -> Optional[int]:
    return None if value is None else value // k


def minimalize_at(m: WeierstrassModel, p: Place) -> Tuple[Optional[int], Optional[int], int, int]:
    """Valuations ``(ord c4, ord c6, ord delta)`` of the minimal model at ``p``.

    Returns them together with ``u_order``. The scaling exponent is
    ``min(floor(ord A / 4), floor(ord B / 6))``, which both removes excess
    powers of the uniformizer and clears poles. ``None`` stands for an
    identically vanishing invariant.
    """
    va = valuation_or_none(m.A, p)
    vb = valuation_or_none(m.B, p)
    candidates = [k for k in (_floor_div(va, 4), _floor_div(vb, 6)) if k is not None]
    k = min(candidates)
    vd = valuation_or_none(m.discriminant, p)
    ord_a = None if va is None else va - 4 * k
    ord_b = None if vb is None else vb - 6 * k
    ord_delta = vd - 12 * k
    return ord_a, ord_b, ord_delta, k


def fiber_at(m: WeierstrassModel, p: Place) -> FiberData:
    ord_a, ord_b, ord_delta, k = minimalize_at(m, p)
    kodaira = classify_fiber(ord_a, ord_b, ord_delta)
    return FiberData(p, kodaira, ord_a, ord_b, ord_delta, k)


def candidate_places(m: WeierstrassModel) -> List[Place]:
    """Places where the fiber may be bad or the frame may need correcting."""
    return places_of(m.discriminant, m.A.den, m.B.den)


def local_fibers(m: WeierstrassModel) -> List[FiberData]:
    """Fiber data at every candidate place, infinity last."""
    fibers = [fiber_at(m, p) for p in candidate_places(m)]
    for f in fibers:
        if f.is_bad:
            logger.debug(f"fiber {f.kodaira_type} at {f.place.label(m.variable)} (u_order {f.u_order})")
    return fibers


def bad_fibers(m: WeierstrassModel) -> List[FiberData]:
    return [f for f in local_fibers(m) if f.is_bad]
