"""Pointwise evaluation of the tangency form of a section.

For a section ``P`` with elliptic logarithm ``z(t)`` and a continued period
basis ``(w1(t), w2(t))`` write ``z = r*w1 + s*w2`` with real ``r, s``. The
form ``dz - r dw1 - s dw2`` does not depend on the choice of basis or of
the logarithm branch and vanishes exactly where ``P`` is tangent to the
leaf of constant ``(r, s)``. Its coefficient against ``dzeta`` (``zeta = t``
or ``zeta = 1/t``) and the dual of ``dx/(2y)`` is what this module returns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from analytic.betti import BettiCoords
from analytic.ellog import elliptic_log_array
from analytic.lattice import discriminant_scale, raw_periods, real_coords, reduce_basis
from config import BettiConstants, settings
from utils.errors import BranchTrackingError, InputError, NearSingularFiberError

logger = logging.getLogger(__name__)

CHARTS = ("t", "s")


@dataclass(frozen=True)
class EtaSample:
    t0: complex
    value: complex
    step: float
    omega2: complex = 1.0
    betti: Optional[BettiCoords] = None
    chart: str = "t"

    @property
    def normalized(self) -> complex:
        """Coefficient in the normalised coordinate ``w = z/w2``."""
        return self.value / self.omega2


def chart_coordinate(t: Optional[complex], chart: str) -> Optional[complex]:
    """Coordinate of the base point ``t`` (``None`` is infinity) in ``chart``."""
    if chart == "t":
        return None if t is None else complex(t)
    if t is None:
        return 0j
    if t == 0:
        return None
    return 1.0 / complex(t)


def nearest_lattice_vector(p, w1, w2) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closest lattice vector to ``p`` for a reduced basis, with its integer coordinates."""
    a, b = real_coords(p, w1, w2)
    a0, b0 = np.round(a), np.round(b)
    best_m, best_n = a0, b0
    best = np.abs(p - a0 * w1 - b0 * w2)
    for da in (-1, 0, 1):
        for db in (-1, 0, 1):
            m, n = a0 + da, b0 + db
            dist = np.abs(p - m * w1 - n * w2)
            better = dist < best
            best = np.where(better, dist, best)
            best_m = np.where(better, m, best_m)
            best_n = np.where(better, n, best_n)
    return best_m * w1 + best_n * w2, best_m, best_n


def align_frame(ref_w1, ref_w2, ref_z, w1, w2, z, threshold: float = BettiConstants.BRANCH_CONTINUITY):
    """Re-express a neighbouring frame in the basis and branch closest to the reference.

    ``w1, w2`` must be a reduced basis. Returns ``(w1', w2', z', ok)``; ``ok``
    is false where the lattice moved by more than ``threshold`` times its
    shortest period or the basis change is not unimodular.
    """
    v1, m1, n1 = nearest_lattice_vector(ref_w1, w1, w2)
    v2, m2, n2 = nearest_lattice_vector(ref_w2, w1, w2)
    det = m1 * n2 - n1 * m2
    shift, _, _ = nearest_lattice_vector(z - ref_z, w1, w2)
    zz = z - shift
    rw1, rw2 = reduce_basis(ref_w1, ref_w2)
    limit = threshold * np.minimum(np.abs(rw1), np.abs(rw2))
    drift = np.maximum(np.maximum(np.abs(v1 - ref_w1), np.abs(v2 - ref_w2)), np.abs(zz - ref_z))
    ok = (det == 1) & (drift <= limit)
    return v1, v2, zz, ok


class EtaEvaluator:
    """Evaluates the tangency form of ``point`` on ``model`` in one chart.

    ``special_points`` are base points (``None`` for infinity) the
    finite-difference step scales against; they are usually the bad places
    and the poles of the section.
    """

    def __init__(
        self,
        model,
        point,
        chart: str = "t",
        special_points: Iterable[Optional[complex]] = (),
        fd_step: Optional[float] = None,
        fixed_step: Optional[float] = None,
        chunk: Optional[int] = None,
    ):
        if chart not in CHARTS:
            raise InputError(f"unknown chart {chart!r}")
        if point.is_zero:
            raise InputError("the zero section has no tangency form")
        self.model = model
        self.point = point
        self.chart = chart
        self.fd_step = fd_step if fd_step is not None else settings.fd_step
        self.fixed_step = fixed_step
        self.chunk = chunk or settings.eval_chunk
        coords = [chart_coordinate(p, chart) for p in special_points]
        self.special = np.array([c for c in coords if c is not None], dtype=complex)
        self._a = model.A.numeric()
        self._b = model.B.numeric()
        self._x = point.x.numeric()
        self._y = point.y.numeric()

    def to_base(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        if self.chart == "t":
            return zeta
        with np.errstate(divide="ignore", invalid="ignore"):
            return 1.0 / zeta

    def frame(self, zeta) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Reduced period basis and elliptic logarithm at each ``zeta``."""
        t = self.to_base(zeta)
        with np.errstate(all="ignore"):
            a, b, x, y = self._a(t), self._b(t), self._x(t), self._y(t)
            ok = np.isfinite(a) & np.isfinite(b) & np.isfinite(x) & np.isfinite(y)
            ok &= discriminant_scale(np.where(ok, a, -1.0), np.where(ok, b, 0.0)) > BettiConstants.NEAR_SINGULAR
        # placeholders on y^2 = x^3 - x keep the kernels finite
        a = np.where(ok, a, -1.0)
        b = np.where(ok, b, 0.0)
        x = np.where(ok, x, 0.0)
        y = np.where(ok, y, 0.0)
        w1, w2 = reduce_basis(*raw_periods(a, b))
        z, zok = elliptic_log_array(a, b, x, y, w1, w2)
        return w1, w2, z, ok & zok

    def step_size(self, zeta) -> np.ndarray:
        zeta = np.asarray(zeta, dtype=complex)
        if self.fixed_step is not None:
            return np.full(zeta.shape, float(self.fixed_step))
        if self.special.size == 0:
            dist = np.ones(zeta.shape)
        else:
            dist = np.min(np.abs(zeta[..., None] - self.special), axis=-1)
        return self.fd_step * np.clip(dist, 1e-3, 10.0)

    def _evaluate_chunk(self, zeta: np.ndarray):
        h = self.step_size(zeta)
        n = zeta.size
        stacked = np.concatenate([zeta, zeta + h, zeta - h, zeta + 2 * h, zeta - 2 * h])
        w1, w2, z, ok = self.frame(stacked)
        parts = [(w1[k * n:(k + 1) * n], w2[k * n:(k + 1) * n], z[k * n:(k + 1) * n], ok[k * n:(k + 1) * n]) for k in range(5)]
        cw1, cw2, cz, good = parts[0]
        aligned = []
        for pw1, pw2, pz, pok in parts[1:]:
            aw1, aw2, az, aok = align_frame(cw1, cw2, cz, pw1, pw2, pz)
            good = good & pok & aok
            aligned.append(np.stack([aw1, aw2, az]))
        near = (aligned[0] - aligned[1]) / (2 * h)
        far = (aligned[2] - aligned[3]) / (4 * h)
        dw1, dw2, dz = (4 * near - far) / 3
        r, s = real_coords(cz, cw1, cw2)
        c = dz - r * dw1 - s * dw2
        return np.where(good, c, np.nan + 0j), r % 1.0, s % 1.0, cw2, good, h

    def evaluate(self, zeta):
        """Coefficient, Betti coordinates, ``w2`` and validity for an array of points."""
        zeta = np.asarray(zeta, dtype=complex)
        shape = zeta.shape
        flat = zeta.ravel()
        out = [np.empty(flat.size, dtype=complex), np.empty(flat.size), np.empty(flat.size),
               np.empty(flat.size, dtype=complex), np.empty(flat.size, dtype=bool)]
        for start in range(0, flat.size, self.chunk):
            stop = min(start + self.chunk, flat.size)
            c, r, s, w2, good, _ = self._evaluate_chunk(flat[start:stop])
            for arr, val in zip(out, (c, r, s, w2, good)):
                arr[start:stop] = val
        return tuple(arr.reshape(shape) for arr in out)

    def __call__(self, zeta):
        return self.evaluate(zeta)[0]

    def sample(self, zeta0: complex) -> EtaSample:
        """Single evaluation that raises instead of returning NaN."""
        zeta = np.array([complex(zeta0)])
        t = self.to_base(zeta)
        with np.errstate(all="ignore"):
            a, b = self._a(t), self._b(t)
        if not np.all(np.isfinite(a) & np.isfinite(b)) or discriminant_scale(a, b)[0] <= BettiConstants.NEAR_SINGULAR:
            raise NearSingularFiberError(f"fiber over {complex(t[0])} is numerically singular", t=complex(t[0]))
        c, r, s, w2, good, h = self._evaluate_chunk(zeta)
        if not good[0]:
            raise BranchTrackingError(
                f"branch continuation failed at {complex(zeta0)} (step {h[0]:.3e}); try a smaller step",
                zeta=complex(zeta0),
                step=float(h[0]),
            )
        return EtaSample(complex(zeta0), complex(c[0]), float(h[0]), complex(w2[0]), BettiCoords(r[0], s[0]), self.chart)


def eta_P(model, point, t0: complex, step: Optional[float] = None, special_points: Sequence[Optional[complex]] = ()) -> EtaSample:
    """Tangency form of ``point`` at the finite base point ``t0``."""
    evaluator = EtaEvaluator(model, point, "t", special_points=special_points, fixed_step=step)
    return evaluator.sample(t0)
