"""Betti coordinates of a fiber point."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _unit(value: float) -> float:
    v = value % 1.0
    # keep 0.9999999999999 and -1e-17 together at 0
    return 0.0 if abs(v - 1.0) < 1e-14 or abs(v) < 1e-14 else v


@dataclass(frozen=True)
class BettiCoords:
    """Real coordinates ``(r, s)`` mod 1 with ``w = r*tau + s`` mod the lattice."""

    r: float
    s: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", _unit(float(self.r)))
        object.__setattr__(self, "s", _unit(float(self.s)))

    def reconstruct(self, tau: complex) -> complex:
        return self.r * tau + self.s

    def scaled(self, n: int) -> "BettiCoords":
        return BettiCoords(n * self.r, n * self.s)

    def distance(self, other: "BettiCoords") -> float:
        """Distance on the torus ``(R/Z)^2`` in the max norm."""
        dr = abs(self.r - other.r) % 1.0
        ds = abs(self.s - other.s) % 1.0
        return max(min(dr, 1 - dr), min(ds, 1 - ds))

    def transformed(self, matrix) -> "BettiCoords":
        """Coordinates after the basis change ``(w1', w2') = M (w1, w2)``."""
        inv = np.linalg.inv(np.asarray(matrix, dtype=float))
        r, s = np.array([self.r, self.s]) @ inv
        return BettiCoords(r, s)

    def as_dict(self) -> dict:
        return {"r": self.r, "s": self.s}


def betti_coords(w: complex, tau: complex) -> BettiCoords:
    """Betti coordinates of the normalised logarithm ``w`` for the lattice ``Z tau + Z``."""
    if tau.imag <= 0:
        raise ValueError(f"tau must lie in the upper half plane: {tau}")
    r = w.imag / tau.imag
    return BettiCoords(r, w.real - r * tau.real)
