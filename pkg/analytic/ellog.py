"""Weierstrass function and elliptic logarithm.

The lattice normalisation is that of :mod:`analytic.lattice`: a point
``(x, y)`` of ``y^2 = x^3 + A x + B`` corresponds to ``z`` with
``x = p(z)`` and ``y = p'(z)/2``.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.special import elliprf

from analytic.lattice import PeriodBasis, Q_TERMS, cubic_roots, real_coords, reduce_basis
from utils.errors import BranchTrackingError, OffCurveError

logger = logging.getLogger(__name__)

#: Relative tolerance for accepting the reconstructed abscissa
LOG_CHECK_TOLERANCE = 1e-6


def weierstrass_p(z, w1, w2) -> Tuple[np.ndarray, np.ndarray]:
    """``(p(z), p'(z)/2)`` for the lattice spanned by ``w1, w2``."""
    z = np.asarray(z, dtype=complex)
    w1, w2 = reduce_basis(np.asarray(w1, dtype=complex), np.asarray(w2, dtype=complex))
    tau = w1 / w2
    v = z / w2
    m = np.round(np.imag(v) / np.imag(tau))
    v = v - m * tau
    v = v - np.round(np.real(v))
    q = np.exp(2j * np.pi * tau)
    u = np.exp(2j * np.pi * v)
    p = u / (1 - u) ** 2 + 1.0 / 12
    dp = u * (1 + u) / (1 - u) ** 3
    for n in range(1, Q_TERMS + 1):
        qn = q ** n
        a = qn * u
        b = qn / u
        p = p + a / (1 - a) ** 2 + b / (1 - b) ** 2 - 2 * qn / (1 - qn) ** 2
        dp = dp + a * (1 + a) / (1 - a) ** 3 - b * (1 + b) / (1 - b) ** 3
    k = 2j * np.pi / w2
    return k ** 2 * p, k ** 3 * dp / 2


def reduce_to_parallelogram(z, w1, w2) -> np.ndarray:
    """Representative ``a*w1 + b*w2`` with ``0 <= a, b < 1``."""
    a, b = real_coords(z, w1, w2)
    return z - np.floor(a) * w1 - np.floor(b) * w2


def _ray_rotation(d: np.ndarray) -> np.ndarray:
    """Angle ``phi`` such that the ray ``x + e^{i phi} R_+`` misses every root.

    ``d`` holds the vectors ``e_i - x``. The ray points into the middle of
    their widest angular gap; a vanishing entry (a 2-torsion point) is
    ignored.
    """
    ang = np.angle(d)
    tiny = np.abs(d) <= 1e-300 + 1e-14 * np.max(np.abs(d), axis=-1, keepdims=True)
    # a vanishing entry borrows the angle of its neighbour, which leaves the gaps unchanged
    ang = np.where(tiny, np.roll(ang, 1, axis=-1), ang)
    ang = np.sort(ang, axis=-1)
    gaps = np.concatenate([np.diff(ang, axis=-1), (ang[..., :1] + 2 * np.pi - ang[..., -1:])], axis=-1)
    widest = np.argmax(gaps, axis=-1)
    start = np.take_along_axis(ang, widest[..., None], axis=-1)[..., 0]
    middle = start + 0.5 * np.take_along_axis(gaps, widest[..., None], axis=-1)[..., 0]
    return middle


def elliptic_log_array(a, b, x, y, w1, w2) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised elliptic logarithm.

    Returns ``(z, ok)``; ``z`` is reduced to the parallelogram of ``w1, w2``
    and ``ok`` flags points whose reconstruction ``p(z) = x`` succeeded.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    roots = cubic_roots(a, b)
    d = x[..., None] - roots
    phi = _ray_rotation(-d)
    rot = np.exp(-1j * phi)
    with np.errstate(all="ignore"):
        r = np.exp(-0.5j * phi) * elliprf(rot * d[..., 0], rot * d[..., 1], rot * d[..., 2])
        p, half_dp = weierstrass_p(r, w1, w2)
    z = np.where(np.abs(half_dp + y) < np.abs(half_dp - y), -r, r)
    scale = 1.0 + np.abs(x)
    ok = np.isfinite(z) & (np.abs(p - x) <= LOG_CHECK_TOLERANCE * scale)
    return reduce_to_parallelogram(z, w1, w2), ok


def curve_residual(a: complex, b: complex, x: complex, y: complex) -> float:
    scale = 1.0 + abs(x) ** 3 + abs(y) ** 2 + abs(a * x) + abs(b)
    return abs(y * y - (x ** 3 + a * x + b)) / scale


def elliptic_log(a: complex, b: complex, point: Optional[Tuple[complex, complex]], basis: PeriodBasis) -> complex:
    """Elliptic logarithm of ``point``; ``None`` stands for the point at infinity."""
    if point is None:
        return 0j
    x, y = complex(point[0]), complex(point[1])
    tolerance = max(1e3 * basis.precision, 1e-9)
    residual = curve_residual(a, b, x, y)
    if residual > tolerance:
        raise OffCurveError(f"({x}, {y}) is not on the curve (residual {residual:.3e})", residual=residual)
    z, ok = elliptic_log_array(a, b, x, y, basis.omega1, basis.omega2)
    if not bool(ok):
        raise BranchTrackingError(f"elliptic logarithm of ({x}, {y}) failed the reconstruction check")
    return complex(z)


def lattice_distance(z, w1, w2) -> np.ndarray:
    """Distance from ``z`` to the nearest lattice point."""
    a, b = real_coords(z, w1, w2)
    best = None
    for da in (-1, 0, 1):
        for db in (-1, 0, 1):
            cand = np.abs(z - (np.round(a) + da) * w1 - (np.round(b) + db) * w2)
            best = cand if best is None else np.minimum(best, cand)
    return best
