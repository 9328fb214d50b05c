"""Global count of tangency indices over the projective line.

Summing the local indices of the tangency form over every point of the
base (zeros in both charts plus the special points) must give
``2g - 2 - d``; the number of points with positive index is at most
``2g - 2 - d + delta``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from analytic.eta import EtaEvaluator
from config import settings
from mwgroup.points import SectionPoint
from mwgroup.torsion import is_torsion
from surface.invariants import possibly_constant, surface_invariants
from tangency.indices import (
    SpecialPoint,
    bad_place_index,
    exclusion_radius,
    expected_bad_index,
    special_coordinates,
    special_points,
)
from tangency.torsion import classify_torsion_tangency
from tangency.winding import contour_winding
from tangency.zeros import ChartScan, TangencyRecord, scan_chart
from utils.errors import ContourRefinementError, InputError, TorsionPointError
from utils.steps import record_check

logger = logging.getLogger(__name__)


@dataclass
class ZeroSearch:
    zeros: List[TangencyRecord]
    unresolved: List[complex]
    scans: Dict[str, ChartScan]
    radius: float

    @property
    def complete(self) -> bool:
        return not self.unresolved


@dataclass
class SpecialIndex:
    label: str
    J: int
    expected: Optional[int]
    winding: int
    u_order: int
    radius: float
    kodaira: str
    is_bad: bool

    def as_dict(self) -> dict:
        return {
            "J": self.J,
            "expected": self.expected,
            "winding": self.winding,
            "u_order": self.u_order,
            "radius": self.radius,
            "kodaira": self.kodaira,
            "bad": self.is_bad,
        }


@dataclass
class SumIdentityReport:
    zeros: List[TangencyRecord]
    bad_place_indices: Dict[str, int]
    total: int
    expected: int
    bound: int
    passed: bool
    t_betti: int = 0
    bound_holds: bool = True
    complete: bool = True
    unresolved: List[complex] = field(default_factory=list)
    special: List[SpecialIndex] = field(default_factory=list)
    argument_principle: Optional[dict] = None
    warnings: List[str] = field(default_factory=list)
    #: t-chart grid, kept for plotting
    scan: Optional[ChartScan] = field(default=None, repr=False)


def scan_radius(points: Sequence[SpecialPoint]) -> float:
    finite = [abs(sp.root) for sp in points if sp.root is not None]
    return 2.0 + max(finite, default=0.0)


def _evaluators(model, point, points: Sequence[SpecialPoint]) -> Dict[str, EtaEvaluator]:
    roots = [sp.root for sp in points]
    return {chart: EtaEvaluator(model, point, chart, special_points=roots) for chart in ("t", "s")}


def find_zeros(
    model,
    point: SectionPoint,
    radius: Optional[float] = None,
    grid: Optional[int] = None,
    exclusion: Optional[float] = None,
    points: Optional[Sequence[SpecialPoint]] = None,
    evaluators: Optional[Dict[str, EtaEvaluator]] = None,
) -> ZeroSearch:
    """Zeros of the tangency form away from the special points.

    The disk ``|t| <= R`` is scanned in the ``t`` chart and its complement
    in the ``s = 1/t`` chart, so every point of the projective line is
    covered exactly once.
    """
    points = list(points) if points is not None else special_points(model, point)
    evaluators = evaluators or _evaluators(model, point, points)
    radius = radius or scan_radius(points)
    t_specials = special_coordinates(points, "t")
    s_specials = special_coordinates(points, "s")
    t_excl = exclusion if exclusion is not None else exclusion_radius(t_specials)
    s_excl = exclusion_radius(s_specials, cap=0.5 / radius)
    t_scan = scan_chart(evaluators["t"], 1.1 * radius, t_specials, t_excl, radius, grid)
    s_scan = scan_chart(evaluators["s"], 1.1 / radius, s_specials, s_excl, 1.0 / radius, grid, strict_inside=True)
    zeros = sorted(
        t_scan.zeros + s_scan.zeros,
        key=lambda r: (float("inf"), 0.0) if r.t0 is None else (r.t0.real, r.t0.imag),
    )
    unresolved = t_scan.unresolved + [1 / z for z in s_scan.unresolved if z]
    logger.info(f"found {len(zeros)} zeros of the tangency form ({len(unresolved)} unresolved)")
    return ZeroSearch(zeros, unresolved, {"t": t_scan, "s": s_scan}, radius)


def special_indices(
    point: SectionPoint,
    points: Sequence[SpecialPoint],
    evaluators: Dict[str, EtaEvaluator],
    radius: float,
) -> List[SpecialIndex]:
    t_excl = exclusion_radius(special_coordinates(points, "t"))
    s_excl = exclusion_radius(special_coordinates(points, "s"), cap=0.5 / radius)
    out: List[SpecialIndex] = []
    for sp in points:
        rho = s_excl if sp.is_infinite else t_excl
        J, winding, used = bad_place_index(evaluators[sp.chart], sp, rho)
        expected = expected_bad_index(point, sp)
        if expected is not None and expected != J:
            logger.warning(f"index {J} at {sp.label} differs from the predicted {expected}")
        out.append(
            SpecialIndex(sp.label, J, expected, winding.index, sp.fiber.u_order, used, str(sp.fiber.kodaira_type), sp.is_bad)
        )
    return out


def _stray_absorbed(search: ZeroSearch, points: Sequence[SpecialPoint], special: Sequence[SpecialIndex]) -> int:
    """Absorbed zeros left outside the contour actually used at their special point."""
    count = 0
    for chart, scan in search.scans.items():
        centres = [(sp.coordinate(), si.radius) for sp, si in zip(points, special) if sp.chart == chart]
        for z in scan.absorbed:
            if centres and not any(abs(z - c) < rho for c, rho in centres):
                count += 1
    return count


def _argument_principle(evaluator: EtaEvaluator, radius: float, zeros, special: Sequence[SpecialIndex], points) -> dict:
    """Winding on ``|t| = R`` against the indices found inside it."""
    try:
        outer = contour_winding(evaluator, 0j, radius).index
    except ContourRefinementError as exc:
        logger.warning(f"argument principle contour failed: {exc}")
        return {"outer": None, "inside": None, "consistent": False}
    inside = sum(z.J for z in zeros if z.t0 is not None and abs(z.t0) < radius)
    inside += sum(si.winding for si, sp in zip(special, points) if not sp.is_infinite)
    return {"outer": outer, "inside": inside, "consistent": outer == inside}


def verify_sum_identity(
    model,
    point: SectionPoint,
    base_genus: int = 0,
    grid: Optional[int] = None,
    n_max: Optional[int] = None,
    precision: Optional[float] = None,
    region: Optional[float] = None,
) -> SumIdentityReport:
    """Add up all local indices and compare with ``2g - 2 - d``.

    A report with unresolved zero candidates is marked incomplete and never
    passes.
    """
    if base_genus != 0:
        raise InputError("numerical index sums are only available over the projective line")
    n_max = n_max or settings.n_max
    torsion = is_torsion(point, n_max)
    if torsion.is_torsion:
        raise TorsionPointError(torsion.order)
    inv = surface_invariants(model, base_genus)
    if possibly_constant(model, inv):
        raise InputError("the surface may be constant; tangency counts need a non-constant surface")

    points = special_points(model, point, precision or settings.precision)
    evaluators = _evaluators(model, point, points)
    radius = scan_radius(points)
    if region is not None:
        if region < radius - 1.0:
            logger.warning(f"scan region {region} does not clear the special points; using {radius}")
        else:
            radius = float(region)
    special = special_indices(point, points, evaluators, radius)
    search = find_zeros(model, point, radius, grid, points=points, evaluators=evaluators)
    zeros = [classify_torsion_tangency(rec, model, point, n_max) for rec in search.zeros]

    total = sum(z.J for z in zeros) + sum(si.J for si in special)
    expected = 2 * base_genus - 2 - inv.d
    t_betti = sum(1 for z in zeros if z.J >= 1) + sum(1 for si in special if si.J >= 1)
    bound_holds = t_betti <= inv.bound
    warnings: List[str] = []
    stray = _stray_absorbed(search, points, special)
    if stray:
        warnings.append(f"{stray} zeros lie between a shrunken contour and its exclusion disk")
    complete = search.complete and not stray
    near = sum(len(scan.near_special) for scan in search.scans.values())
    if near:
        warnings.append(f"{near} winding cells next to special points were left to their contours")
    passed = complete and total == expected
    if not complete:
        warnings.append(f"{len(search.unresolved)} zero candidates could not be resolved")
    for si in special:
        if si.expected is not None and si.expected != si.J:
            warnings.append(f"index {si.J} at {si.label} differs from the predicted {si.expected}")
    if not bound_holds:
        warnings.append(f"{t_betti} tangencies exceed the bound {inv.bound}")
    ap = _argument_principle(evaluators["t"], radius, zeros, special, points)
    if not ap["consistent"]:
        warnings.append("argument principle on |t| = R is inconsistent with the indices inside")
    record_check("sum identity", passed, f"total {total} expected {expected}")
    record_check("tangency bound", bound_holds, f"|T_Betti| = {t_betti} <= {inv.bound}")
    return SumIdentityReport(
        zeros=zeros,
        bad_place_indices={si.label: si.J for si in special},
        total=total,
        expected=expected,
        bound=inv.bound,
        passed=passed,
        t_betti=t_betti,
        bound_holds=bound_holds,
        complete=complete,
        unresolved=search.unresolved,
        special=special,
        argument_principle=ap,
        warnings=warnings,
        scan=search.scans["t"],
    )
