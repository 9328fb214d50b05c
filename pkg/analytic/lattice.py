"""Period lattices of ``y^2 = x^3 + A x + B`` by the complex AGM.

All kernels accept numpy arrays of coefficients and work elementwise, so a
whole scan grid can be processed in one call. The lattice is that of the
invariant differential ``dx/(2y)``, i.e. the lattice of the Weierstrass
function with ``g2 = -4A`` and ``g3 = -4B``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from config import BettiConstants
from utils.errors import NearSingularFiberError, NoConvergenceError, NumericalError

logger = logging.getLogger(__name__)

#: AGM iterations before giving up; convergence is quadratic
AGM_MAX_STEPS = 64

#: Terms of the q-expansions used for Eisenstein series and the Weierstrass function
Q_TERMS = 12


@dataclass(frozen=True)
class PeriodBasis:
    """Oriented lattice basis with ``tau = omega1/omega2`` in the upper half plane."""

    omega1: complex
    omega2: complex
    precision: float = BettiConstants.DEFAULT_PRECISION

    @property
    def tau(self) -> complex:
        return self.omega1 / self.omega2

    def reduced(self) -> "PeriodBasis":
        w1, w2 = reduce_basis(np.asarray(self.omega1), np.asarray(self.omega2))
        return PeriodBasis(complex(w1), complex(w2), self.precision)

    def real_period(self, real_components: int = 1) -> float:
        """Least positive real period, times the number of real components.

        With two real components this equals the integral of ``dx/y`` over
        the real locus, the usual real period of the curve.
        """
        for a, b in ((1, 0), (0, 1), (1, 1), (1, -1), (2, -1), (-1, 2), (1, -2), (2, 1), (1, 2)):
            w = a * self.omega1 + b * self.omega2
            if abs(w.imag) <= 1e-9 * abs(w):
                return abs(w.real) * real_components
        raise NumericalError("lattice has no real period")


def cubic_roots(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Roots of ``x^3 + a x + b`` along a trailing axis of length 3."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    shape = np.broadcast(a, b).shape
    a, b = np.broadcast_to(a, shape), np.broadcast_to(b, shape)
    companion = np.zeros(shape + (3, 3), dtype=complex)
    companion[..., 0, 1] = -a
    companion[..., 0, 2] = -b
    companion[..., 1, 0] = 1.0
    companion[..., 2, 1] = 1.0
    roots = np.linalg.eigvals(companion)
    for _ in range(2):
        f = roots ** 3 + a[..., None] * roots + b[..., None]
        df = 3 * roots ** 2 + a[..., None]
        safe = np.abs(df) > 1e-300
        roots = np.where(safe, roots - f / np.where(safe, df, 1.0), roots)
    return roots


def agm(a: np.ndarray, b: np.ndarray, tol: float = 1e-15) -> np.ndarray:
    """Complex arithmetic-geometric mean with the right choice of square roots.

    At every step the geometric mean ``g`` is taken with ``|m - g| <= |m + g|``
    where ``m`` is the arithmetic mean.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    for step in range(AGM_MAX_STEPS):
        m = 0.5 * (a + b)
        g = np.sqrt(a * b)
        g = np.where(np.abs(m - g) > np.abs(m + g), -g, g)
        a, b = m, g
        if np.all(np.abs(a - b) <= tol * np.abs(a)):
            return a
    residual = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300)))
    raise NoConvergenceError("complex AGM", AGM_MAX_STEPS, residual)


def raw_periods(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Oriented period basis (not reduced) for arrays of coefficients.

    For each root ``e_k`` with the other roots ``e_i, e_j`` the value
    ``i*pi / M(sqrt(e_i - e_k), sqrt(e_j - e_k))`` is a primitive period,
    and any two of the three form a basis. The two roots whose neighbours
    subtend the smallest angle are used.
    """
    roots = cubic_roots(a, b)
    candidates = []
    angles = []
    for k, (i, j) in enumerate(((1, 2), (0, 2), (0, 1))):
        da = roots[..., i] - roots[..., k]
        db = roots[..., j] - roots[..., k]
        sa = np.sqrt(da)
        sb = np.sqrt(db)
        sb = np.where(np.real(sb / sa) < 0, -sb, sb)
        candidates.append(1j * np.pi / agm(sa, sb))
        angles.append(np.abs(np.angle(db / da)))
    candidates = np.stack(candidates, axis=-1)
    order = np.argsort(np.stack(angles, axis=-1), axis=-1)
    w1 = np.take_along_axis(candidates, order[..., 0:1], axis=-1)[..., 0]
    w2 = np.take_along_axis(candidates, order[..., 1:2], axis=-1)[..., 0]
    flip = np.imag(w1 / w2) < 0
    w1, w2 = np.where(flip, w2, w1), np.where(flip, w1, w2)
    return w1, w2


def reduce_basis(w1: np.ndarray, w2: np.ndarray, max_steps: int = 100) -> Tuple[np.ndarray, np.ndarray]:
    """Move ``tau = w1/w2`` into the standard fundamental domain."""
    w1 = np.array(w1, dtype=complex, copy=True)
    w2 = np.array(w2, dtype=complex, copy=True)
    for _ in range(max_steps):
        n = np.round(np.real(w1 / w2))
        w1 = w1 - n * w2
        swap = np.abs(w1) < np.abs(w2) * (1 - 1e-14)
        if not np.any(swap):
            break
        w1, w2 = np.where(swap, -w2, w1), np.where(swap, w1, w2)
    return w1, w2


def real_coords(p: np.ndarray, w1: np.ndarray, w2: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Real ``(a, b)`` with ``p = a*w1 + b*w2``."""
    det = np.imag(w1 * np.conj(w2))
    a = np.imag(p * np.conj(w2)) / det
    b = np.imag(w1 * np.conj(p)) / det
    return a, b


def eisenstein_invariants(w1: np.ndarray, w2: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """``(g2, g3)`` of the lattice from the q-expansions of ``E4`` and ``E6``."""
    w1, w2 = reduce_basis(w1, w2)
    q = np.exp(2j * np.pi * (w1 / w2))
    e4 = np.ones_like(q)
    e6 = np.ones_like(q)
    for n in range(1, Q_TERMS + 1):
        divisors = [d for d in range(1, n + 1) if n % d == 0]
        sigma3 = sum(d ** 3 for d in divisors)
        sigma5 = sum(d ** 5 for d in divisors)
        qn = q ** n
        e4 = e4 + 240 * sigma3 * qn
        e6 = e6 - 504 * sigma5 * qn
    scale = 2 * np.pi / w2
    return scale ** 4 * e4 / 12, scale ** 6 * e6 / 216


def discriminant_scale(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``|4a^3 + 27b^2|`` relative to the size of its terms."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    terms = 4 * np.abs(a) ** 3 + 27 * np.abs(b) ** 2
    return np.abs(4 * a ** 3 + 27 * b ** 2) / np.maximum(terms, 1e-300)


def period_lattice(a: complex, b: complex, precision: float = BettiConstants.DEFAULT_PRECISION) -> PeriodBasis:
    """Reduced period basis of ``y^2 = x^3 + a x + b``.

    The basis is checked against the curve by recomputing ``g2`` and ``g3``
    from Eisenstein series.
    """
    if discriminant_scale(a, b) < BettiConstants.NEAR_SINGULAR:
        raise NearSingularFiberError(f"fiber is numerically singular (A={a}, B={b})", A=a, B=b)
    w1, w2 = raw_periods(np.asarray(a), np.asarray(b))
    w1, w2 = reduce_basis(w1, w2)
    g2, g3 = eisenstein_invariants(w1, w2)
    scale = 1.0 + abs(a) + abs(b)
    err = max(abs(complex(g2) + 4 * a), abs(complex(g3) + 4 * b)) / scale
    if err > max(1e3 * precision, 1e-9):
        raise NumericalError(f"period lattice does not reproduce the curve (error {err:.3e})", error=err)
    return PeriodBasis(complex(w1), complex(w2), precision)
