"""Continuation of periods and logarithms along closed paths."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from analytic.betti import BettiCoords
from analytic.eta import EtaEvaluator, align_frame
from analytic.lattice import real_coords
from utils.errors import BranchTrackingError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransportResult:
    """Outcome of continuing ``(w1, w2, z)`` once around a loop.

    ``monodromy`` expresses the final basis in terms of the initial one:
    ``(w1', w2') = M (w1, w2)``.
    """

    monodromy: np.ndarray
    start: BettiCoords
    end: BettiCoords
    steps: int

    @property
    def trace(self) -> int:
        return int(round(np.trace(self.monodromy)))

    def predicted_end(self) -> BettiCoords:
        return self.start.transformed(self.monodromy)

    def order(self, limit: int = 12) -> int:
        """Smallest ``n <= limit`` with ``M^n = 1``, or 0."""
        power = np.eye(2, dtype=int)
        for n in range(1, limit + 1):
            power = power @ self.monodromy
            if np.array_equal(power, np.eye(2, dtype=int)):
                return n
        return 0


def transport(model, point, centre: complex, radius: float, steps: int = 400) -> TransportResult:
    """Follow the circle ``|t - centre| = radius`` once counter-clockwise."""
    evaluator = EtaEvaluator(model, point, "t")
    angles = np.linspace(0.0, 2 * np.pi, steps + 1)
    path = complex(centre) + radius * np.exp(1j * angles)
    w1, w2, z, ok = evaluator.frame(path)
    if not np.all(ok):
        bad = path[~ok][0]
        raise BranchTrackingError(f"frame undefined on the transport path near {bad}", t=complex(bad))
    cur = (w1[0], w2[0], z[0])
    for k in range(1, steps + 1):
        nw1, nw2, nz, good = align_frame(*cur, w1[k], w2[k], z[k])
        if not bool(good):
            raise BranchTrackingError(f"lattice jumped at step {k} of {steps}; use more steps", step=k)
        cur = (nw1, nw2, nz)
    start_r, start_s = real_coords(z[0], w1[0], w2[0])
    end_r, end_s = real_coords(cur[2], cur[0], cur[1])
    a, b = real_coords(cur[0], w1[0], w2[0])
    c, d = real_coords(cur[1], w1[0], w2[0])
    matrix = np.rint(np.array([[a, b], [c, d]], dtype=float)).astype(int)
    logger.debug(f"monodromy around {centre} (radius {radius}): {matrix.tolist()}")
    return TransportResult(matrix, BettiCoords(start_r, start_s), BettiCoords(end_r, end_s), steps)
