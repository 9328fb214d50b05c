"""Global invariants of an elliptic surface and the tangency bound."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional

from surface.minimal import FiberData, bad_fibers, local_fibers
from surface.model import WeierstrassModel
from utils.errors import InvariantMismatchError, MinimalizationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurfaceInvariants:
    """``g``, ``d``, ``delta`` and the numbers derived from them."""

    g: int
    d: int
    delta: int

    @property
    def bound(self) -> int:
        return 2 * self.g - 2 - self.d + self.delta

    @property
    def c1bar_sq(self) -> int:
        return 4 * self.g - 4 + self.d + 2 * self.delta

    @property
    def c2bar(self) -> int:
        return 2 * self.g - 2 + self.delta

    @property
    def euler_characteristic(self) -> int:
        """Topological Euler number ``12 d`` of the surface."""
        return 12 * self.d

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "d": self.d,
            "delta": self.delta,
            "bound": self.bound,
            "c1bar_sq": self.c1bar_sq,
            "c2bar": self.c2bar,
        }


def invariants_from_fibers(fibers: List[FiberData], base_genus: int = 0) -> SurfaceInvariants:
    total = sum(f.ord_delta_min * f.degree for f in fibers)
    if total % 12:
        raise MinimalizationError(
            f"minimal discriminant degree {total} is not divisible by 12", total=total
        )
    d = total // 12
    if d < 0:
        raise MinimalizationError(f"negative Hodge degree {d}", total=total)
    delta = sum(f.degree for f in fibers if f.is_bad)
    inv = SurfaceInvariants(base_genus, d, delta)
    if 3 * inv.c2bar - inv.c1bar_sq != inv.bound:
        raise InvariantMismatchError("3*c2bar - c1bar^2", inv.bound, 3 * inv.c2bar - inv.c1bar_sq)
    return inv


def surface_invariants(m: WeierstrassModel, base_genus: int = 0) -> SurfaceInvariants:
    """Compute ``(g, d, delta)`` from the local minimal models.

    The scaling orders satisfy ``sum u_order * deg = -d`` because the
    scaled discriminant is a global section of the twelfth power of the
    Hodge bundle; this is checked as well.
    """
    fibers = local_fibers(m)
    inv = invariants_from_fibers(fibers, base_genus)
    u_total = sum(f.u_order * f.degree for f in fibers)
    if base_genus == 0 and u_total != -inv.d:
        raise InvariantMismatchError("sum of scaling orders", -inv.d, u_total)
    logger.info(
        f"surface invariants g={inv.g} d={inv.d} delta={inv.delta} bound={inv.bound}"
    )
    return inv


def degenerate_flag(inv: SurfaceInvariants) -> bool:
    """True when the bound is negative, which forces a finite Mordell-Weil group."""
    return inv.bound < 0


def degenerate_message(inv: SurfaceInvariants) -> Optional[str]:
    if not degenerate_flag(inv):
        return None
    return (
        f"2g-2-d+delta = {inv.bound} < 0: the group of sections is finite, "
        "so no section of infinite order exists"
    )


def all_multiplicative(m: WeierstrassModel) -> bool:
    return all(f.kodaira_type.is_multiplicative for f in bad_fibers(m))


@dataclass(frozen=True)
class SemistableCheck:
    hypothesis: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return not self.hypothesis or self.conclusion


def semistable_inequality_check(
    inv: SurfaceInvariants, all_fibers_multiplicative: bool, isotrivial: bool
) -> SemistableCheck:
    """Semistable non-isotrivial surfaces have ``3 c2bar - c1bar^2 > 0``."""
    hypothesis = all_fibers_multiplicative and not isotrivial
    conclusion = 3 * inv.c2bar - inv.c1bar_sq > 0
    if hypothesis and not conclusion:
        logger.warning(f"semistable surface with non-positive bound {inv.bound}")
    return SemistableCheck(hypothesis, conclusion)


def possibly_constant(m: WeierstrassModel, inv: SurfaceInvariants) -> bool:
    """Necessary conditions for a constant surface: constant j and no bad fibers.

    Trivial monodromy cannot be certified here, so a true result only means
    the surface may be constant.
    """
    return m.is_isotrivial() and inv.d == 0 and inv.delta == 0
