"""Grid scan and Newton refinement for zeros of the tangency form."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from analytic.betti import BettiCoords
from analytic.eta import EtaEvaluator
from config import BettiConstants, settings
from tangency.winding import contour_winding
from utils.errors import ContourRefinementError
from utils.progress import safe_tqdm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TangencyRecord:
    """A point of the base where the section is tangent to a Betti leaf.

    ``t0`` is ``None`` for the point at infinity.
    """

    t0: Optional[complex]
    J: int
    betti: Optional[BettiCoords] = None
    torsion_candidate: Optional[Tuple[int, float]] = None
    torsion_confirmed: Optional[bool] = None
    place: Optional[str] = None
    chart: str = "t"

    @property
    def I(self) -> int:  # noqa: E743
        return self.J + 1

    def as_dict(self) -> dict:
        out = {
            "t0": None if self.t0 is None else [self.t0.real, self.t0.imag],
            "J": self.J,
            "I": self.I,
            "betti": None if self.betti is None else self.betti.as_dict(),
            "torsion_candidate": None,
            "place": self.place,
        }
        if self.torsion_candidate is not None:
            n, residual = self.torsion_candidate
            out["torsion_candidate"] = {"n": n, "residual": residual, "confirmed": self.torsion_confirmed}
        return out


@dataclass
class ChartScan:
    """Result of scanning one chart."""

    chart: str
    radius: float
    points: np.ndarray
    values: np.ndarray
    r: np.ndarray
    s: np.ndarray
    median: float
    zeros: List[TangencyRecord] = field(default_factory=list)
    unresolved: List[complex] = field(default_factory=list)
    absorbed: List[complex] = field(default_factory=list)
    #: failed Newton seeds next to a special point, counted by its contour
    near_special: List[complex] = field(default_factory=list)


def _grid(radius: float, n: int) -> Tuple[np.ndarray, float]:
    axis = np.linspace(-radius, radius, n)
    re, im = np.meshgrid(axis, axis)
    return re + 1j * im, axis[1] - axis[0]


def _cell_windings(values: np.ndarray) -> np.ndarray:
    """Winding of ``values`` around each grid cell, NaN cells giving 0."""
    c00 = values[:-1, :-1]
    c01 = values[:-1, 1:]
    c11 = values[1:, 1:]
    c10 = values[1:, :-1]
    with np.errstate(all="ignore"):
        total = (
            np.angle(c01 / c00) + np.angle(c11 / c01) + np.angle(c10 / c11) + np.angle(c00 / c10)
        )
    wind = np.rint(total / (2 * np.pi))
    return np.where(np.isfinite(wind), wind, 0).astype(int)


def _local_minima(mag: np.ndarray, threshold: float) -> np.ndarray:
    """Interior grid indices whose magnitude is a 3x3 minimum below ``threshold``."""
    padded = np.pad(np.where(np.isfinite(mag), mag, np.inf), 1, constant_values=np.inf)
    centre = padded[1:-1, 1:-1]
    is_min = centre < threshold
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            shifted = padded[1 + di:padded.shape[0] - 1 + di, 1 + dj:padded.shape[1] - 1 + dj]
            is_min &= centre <= shifted
    return np.argwhere(is_min)


def newton_zero(
    evaluator: EtaEvaluator,
    seed: complex,
    spacing: float,
    threshold: float,
    limit: float,
    max_steps: Optional[int] = None,
) -> Optional[complex]:
    """Two-dimensional Newton iteration on ``(Re c, Im c)``.

    The Jacobian is taken by forward differences; steps are capped at two
    grid spacings. Returns ``None`` when the iteration fails.
    """
    steps = max_steps or settings.newton_max_steps
    delta = max(1e-9, 1e-3 * spacing)
    p = complex(seed)
    for _ in range(steps):
        f0, fx, fy = evaluator(np.array([p, p + delta, p + 1j * delta]))
        if not (np.isfinite(f0) and np.isfinite(fx) and np.isfinite(fy)):
            return None
        if abs(f0) < threshold:
            return p
        jac = np.array([[(fx - f0).real, (fy - f0).real], [(fx - f0).imag, (fy - f0).imag]]) / delta
        try:
            dx, dy = np.linalg.solve(jac, np.array([-f0.real, -f0.imag]))
        except np.linalg.LinAlgError:
            return None
        step = complex(dx, dy)
        if abs(step) > 2 * spacing:
            step *= 2 * spacing / abs(step)
        p += step
        if abs(p) > limit:
            return None
    return None


def _special_distance(z: complex, specials: np.ndarray) -> float:
    return float(np.min(np.abs(z - specials))) if specials.size else float("inf")


def _dedup(points: Sequence[complex], radius: float) -> List[complex]:
    out: List[complex] = []
    for p in sorted(points, key=lambda z: (z.real, z.imag)):
        if all(abs(p - q) > radius for q in out):
            out.append(p)
    return out


def scan_chart(
    evaluator: EtaEvaluator,
    radius: float,
    specials: np.ndarray,
    exclusion: float,
    accept_radius: float,
    grid: Optional[int] = None,
    strict_inside: bool = False,
) -> ChartScan:
    """Scan ``|zeta| <= radius`` of one chart for zeros of the tangency form.

    Zeros are accepted inside ``accept_radius`` (strictly inside when
    ``strict_inside``); those within ``exclusion`` of a special point are
    absorbed by that point's contour and only logged.

    Cells with nonzero winding that lie within ``max(exclusion, spacing)``
    of a special point are not used as Newton seeds: either the cell
    contains the special point or its zero is inside the special contour.
    A failed Newton run from a seed just outside that disk is kept apart
    from the unresolved candidates, since the cell sees the winding of the
    special point it borders.
    """
    n = grid or settings.grid
    points, spacing = _grid(radius, n)
    mask = np.abs(points) <= radius
    if specials.size:
        near = np.min(np.abs(points[..., None] - specials), axis=-1)
        mask &= near > 0.5 * exclusion
    flat = points[mask]
    values_flat = np.full(flat.shape, np.nan + 0j)
    r_flat = np.full(flat.shape, np.nan)
    s_flat = np.full(flat.shape, np.nan)
    chunk = settings.eval_chunk
    batches = list(range(0, flat.size, chunk))
    for start in safe_tqdm(batches, desc=f"scan {evaluator.chart}-chart", disable=not settings.show_progress):
        stop = min(start + chunk, flat.size)
        c, r, s, _, _ = evaluator.evaluate(flat[start:stop])
        values_flat[start:stop], r_flat[start:stop], s_flat[start:stop] = c, r, s
    values = np.full(points.shape, np.nan + 0j)
    values[mask] = values_flat
    r_grid = np.full(points.shape, np.nan)
    s_grid = np.full(points.shape, np.nan)
    r_grid[mask], s_grid[mask] = r_flat, s_flat
    mag = np.abs(values)
    finite = mag[np.isfinite(mag)]
    median = float(np.median(finite)) if finite.size else 1.0
    logger.debug(f"{evaluator.chart}-chart scan: {finite.size} valid samples, median |eta| {median:.3e}")

    wind = _cell_windings(values)
    cells = [complex(points[i, j] + 0.5 * spacing * (1 + 1j)) for i, j in np.argwhere(wind != 0)]
    keep_out = max(exclusion, spacing)
    winding_seeds = [z for z in cells if _special_distance(z, specials) > keep_out]
    if len(winding_seeds) < len(cells):
        logger.debug(f"{len(cells) - len(winding_seeds)} winding cells belong to special points")
    minima_seeds = [complex(points[i, j]) for i, j in _local_minima(mag, 0.05 * median)]
    threshold = settings.zero_threshold * median
    limit = 1.25 * radius
    found: List[complex] = []
    unresolved: List[complex] = []
    near_special: List[complex] = []
    for seed in winding_seeds:
        z = newton_zero(evaluator, seed, spacing, threshold, limit)
        if z is not None:
            found.append(z)
        elif _special_distance(seed, specials) <= exclusion + 2 * spacing:
            logger.info(f"Newton did not converge from {seed:.6g} next to a special point")
            near_special.append(seed)
        else:
            logger.warning(f"Newton did not converge from {seed:.6g} ({evaluator.chart}-chart)")
            unresolved.append(seed)
    for seed in minima_seeds:
        z = newton_zero(evaluator, seed, spacing, threshold, limit)
        if z is None:
            logger.debug(f"minimum at {seed:.6g} is not a zero")
        else:
            found.append(z)

    scan = ChartScan(evaluator.chart, radius, points, values, r_grid, s_grid, median)
    scan.near_special = _dedup(near_special, spacing)
    dedup_radius = BettiConstants.DEDUP_FACTOR * 2 * radius
    distinct = _dedup(found, dedup_radius)
    for z in distinct:
        inside = abs(z) < accept_radius if strict_inside else abs(z) <= accept_radius
        if not inside:
            continue
        if _special_distance(z, specials) <= exclusion:
            logger.warning(f"zero at {z:.6g} lies inside a special contour; its index is absorbed there")
            scan.absorbed.append(z)
            continue
        try:
            scan.zeros.append(_record(evaluator, z, spacing, specials, distinct))
        except ContourRefinementError:
            unresolved.append(z)
    scan.unresolved = _dedup(unresolved, spacing)
    return scan


def _record(evaluator: EtaEvaluator, z: complex, spacing: float, specials: np.ndarray, others: Sequence[complex]) -> TangencyRecord:
    gaps = [abs(z - o) for o in others if abs(z - o) > 1e-12]
    if specials.size:
        gaps.append(float(np.min(np.abs(z - specials))))
    rho = min([0.5 * spacing] + [0.3 * g for g in gaps])
    try:
        index = contour_winding(evaluator, z, rho).index
    except ContourRefinementError as exc:
        logger.warning(f"index of the zero at {z:.6g} could not be resolved: {exc}")
        raise
    _, r, s, _, _ = evaluator.evaluate(np.array([z]))
    t0 = z if evaluator.chart == "t" else (None if z == 0 else 1 / z)
    if index < 1:
        logger.warning(f"zero at {z:.6g} has index {index} < 1")
    return TangencyRecord(t0, index, BettiCoords(r[0], s[0]), chart=evaluator.chart)


def plot_rows(scan: ChartScan) -> List[dict]:
    """Rows ``(re_t, im_t, abs_eta, r, s)`` of the valid grid samples."""
    valid = np.isfinite(scan.values)
    pts = scan.points[valid]
    return [
        {"re_t": float(p.real), "im_t": float(p.imag), "abs_eta": float(abs(v)), "r": float(r), "s": float(s)}
        for p, v, r, s in zip(pts, scan.values[valid], scan.r[valid], scan.s[valid])
    ]
