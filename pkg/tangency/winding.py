"""Winding numbers of sampled closed curves and adaptively sampled contours."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from config import BettiConstants, settings
from utils.errors import ContourRefinementError

logger = logging.getLogger(__name__)

#: |f| below this fraction of the largest sample counts as a zero on the contour
DEGENERACY_THRESHOLD = 1e-12


@dataclass(frozen=True)
class WindingResult:
    raw: float
    index: int
    residual: float
    samples: int = 0

    @property
    def accepted(self) -> bool:
        return self.residual < settings.winding_residual_limit


def _check_samples(values: np.ndarray) -> None:
    if not np.all(np.isfinite(values)):
        raise ContourRefinementError("contour passes through points where the function is undefined")
    size = np.abs(values)
    if np.min(size) <= DEGENERACY_THRESHOLD * max(float(np.max(size)), 1e-300):
        raise ContourRefinementError("contour passes too close to a zero", minimum=float(np.min(size)))


def winding_number(
    samples: Sequence[complex],
    max_jump: float = BettiConstants.MAX_ARG_JUMP,
    residual_limit: Optional[float] = None,
) -> WindingResult:
    """Winding number of the closed polygon through ``samples`` around 0.

    The loop is closed from the last sample back to the first.
    """
    values = np.asarray(samples, dtype=complex)
    _check_samples(values)
    increments = np.angle(np.roll(values, -1) / values)
    largest = float(np.max(np.abs(increments)))
    if largest >= max_jump:
        raise ContourRefinementError(f"argument jump {largest:.3f} needs a finer contour", jump=largest)
    raw = float(np.sum(increments) / (2 * np.pi))
    index = int(round(raw))
    residual = abs(raw - index)
    limit = residual_limit if residual_limit is not None else settings.winding_residual_limit
    if residual >= limit:
        raise ContourRefinementError(f"winding residual {residual:.3f} is too large", residual=residual)
    return WindingResult(raw, index, residual, values.size)


def contour_winding(
    func: Callable[[np.ndarray], np.ndarray],
    centre: complex,
    radius: float,
    samples: Optional[int] = None,
    max_refinements: Optional[int] = None,
    max_jump: float = BettiConstants.MAX_ARG_JUMP,
) -> WindingResult:
    """Winding number of ``func`` along ``|z - centre| = radius``.

    Arcs where the argument jumps by ``max_jump`` or more are bisected
    until every jump is small enough.
    """
    n = samples or settings.contour_samples
    rounds = max_refinements if max_refinements is not None else settings.max_contour_refinements
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    values = np.asarray(func(centre + radius * np.exp(1j * theta)), dtype=complex)
    for _ in range(rounds + 1):
        _check_samples(values)
        jumps = np.abs(np.angle(np.roll(values, -1) / values))
        coarse = jumps >= max_jump
        if not np.any(coarse):
            return winding_number(values, max_jump)
        nxt = np.roll(theta, -1)
        nxt[-1] += 2 * np.pi
        mid = 0.5 * (theta[coarse] + nxt[coarse])
        mid_values = np.asarray(func(centre + radius * np.exp(1j * mid)), dtype=complex)
        theta = np.concatenate([theta, mid])
        values = np.concatenate([values, mid_values])
        order = np.argsort(theta)
        theta, values = theta[order], values[order]
    raise ContourRefinementError(
        f"contour around {centre} (radius {radius:.3e}) did not resolve after {rounds} refinements",
        centre=complex(centre),
        radius=radius,
    )
