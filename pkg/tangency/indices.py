"""Local indices at the special points of the base.

Special points are the places where the fiber is bad, where the input
frame differs from the local minimal one, where the section meets the
zero section, and the point at infinity. Their indices are winding
numbers of the tangency form on small circles, corrected by the order of
the scaling to the minimal model.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from analytic.eta import EtaEvaluator, chart_coordinate
from exactalg import Place, complex_roots
from exactalg.places import places_of
from mwgroup.heights import local_intersection
from mwgroup.points import SectionPoint, multiply
from surface.minimal import FiberData, candidate_places, fiber_at
from tangency.winding import WindingResult, contour_winding
from utils.errors import ContourRefinementError

logger = logging.getLogger(__name__)

#: Radius multipliers tried in turn when a contour cannot be resolved
RADIUS_RETRIES = (1.0, 0.7, 0.45)


@dataclass(frozen=True)
class SpecialPoint:
    """A geometric point of the base lying over a special place."""

    place: Place
    root: Optional[complex]
    fiber: FiberData
    variable: str = "t"

    @property
    def is_infinite(self) -> bool:
        return self.root is None

    @property
    def chart(self) -> str:
        return "s" if self.root is None else "t"

    @property
    def is_bad(self) -> bool:
        return self.fiber.is_bad

    @property
    def label(self) -> str:
        if self.root is None:
            return "inf"
        name = self.place.label(self.variable)
        if self.place.degree == 1:
            return name
        return f"{name} @ {self.root.real:.6f}{self.root.imag:+.6f}i"

    def coordinate(self) -> complex:
        return chart_coordinate(self.root, self.chart)


def section_special_places(point: SectionPoint) -> List[Place]:
    """Places of the base where ``P`` may meet the zero section."""
    x = point.x
    out = [p for p in places_of(x.den) if not p.is_infinite]
    if x.num.degree > x.den.degree:
        out.append(Place.infinity())
    return out


def special_points(model, point: SectionPoint, precision: float = 1e-12) -> List[SpecialPoint]:
    """Geometric special points, finite ones sorted by position and infinity last."""
    places = {p: p for p in candidate_places(model)}
    for p in section_special_places(point):
        places.setdefault(p, p)
    places.setdefault(Place.infinity(), Place.infinity())
    out: List[SpecialPoint] = []
    infinity = None
    for place in places:
        fiber = fiber_at(model, place)
        if place.is_infinite:
            infinity = SpecialPoint(place, None, fiber, model.variable)
            continue
        for root in complex_roots(place.poly, precision):
            out.append(SpecialPoint(place, complex(root), fiber, model.variable))
    out.sort(key=lambda sp: (sp.root.real, sp.root.imag))
    out.append(infinity)
    return out


def exclusion_radius(points: Sequence[complex], cap: float = 0.5) -> float:
    """A quarter of the smallest pairwise distance, capped."""
    pts = [complex(p) for p in points]
    if len(pts) < 2:
        return cap
    closest = min(abs(a - b) for a, b in itertools.combinations(pts, 2))
    return min(0.25 * closest, cap)


def expected_bad_index(point: SectionPoint, sp: SpecialPoint) -> Optional[int]:
    """Index predicted from exact data, or ``None`` when it cannot be predicted.

    At a bad place the section is replaced by ``mP`` with ``m`` the order of
    the component group; the index is ``(mP.O) - 1``. At a good place the
    index is ``(P.O) - 1`` when ``P`` meets ``O`` there; elsewhere a good
    point may carry a tangency, so nothing is predicted.
    """
    f = sp.fiber
    if not f.is_bad:
        meets = local_intersection(point, f)
        return meets - 1 if meets > 0 else None
    q = multiply(point, f.component_group_order)
    if q.is_zero:
        return None
    return local_intersection(q, f) - 1


def bad_place_index(evaluator: EtaEvaluator, sp: SpecialPoint, radius: float) -> tuple:
    """Index ``J`` at ``sp``: winding on a circle of ``radius`` plus ``u_order``.

    Returns ``(J, winding, radius_used)``. ``evaluator`` must use the chart
    of the special point.
    """
    centre = sp.coordinate()
    last_error: Optional[ContourRefinementError] = None
    for factor in RADIUS_RETRIES:
        rho = radius * factor
        try:
            result: WindingResult = contour_winding(evaluator, centre, rho)
        except ContourRefinementError as exc:
            logger.debug(f"contour at {sp.label} radius {rho:.3e} failed: {exc}")
            last_error = exc
            continue
        return result.index + sp.fiber.u_order, result, rho
    raise ContourRefinementError(
        f"no resolvable contour around {sp.label}: {last_error}", place=sp.label, radius=radius
    )


def special_coordinates(points: Sequence[SpecialPoint], chart: str) -> np.ndarray:
    coords = [chart_coordinate(sp.root, chart) for sp in points]
    return np.array([c for c in coords if c is not None], dtype=complex)


def index_at_place(model, point: SectionPoint, place: Place, radius: Optional[float] = None) -> dict:
    """Indices ``J`` at every geometric point over ``place``, keyed by label."""
    points = special_points(model, point)
    over = [sp for sp in points if sp.place == place]
    if not over:
        over = [
            SpecialPoint(place, None if place.is_infinite else complex(root), fiber_at(model, place), model.variable)
            for root in ([None] if place.is_infinite else complex_roots(place.poly))
        ]
    scan = 2.0 + max((abs(p.root) for p in points if p.root is not None), default=0.0)
    out = {}
    for sp in over:
        chart = sp.chart
        coords = special_coordinates(points, chart)
        rho = radius if radius is not None else exclusion_radius(coords, cap=0.5 if chart == "t" else 0.5 / scan)
        evaluator = EtaEvaluator(model, point, chart, special_points=[p.root for p in points])
        out[sp.label] = bad_place_index(evaluator, sp, rho)[0]
    return out
