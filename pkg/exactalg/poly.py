"""Univariate polynomials over the rationals.

:class:`Poly` is an immutable value type that exposes its coefficients as
:class:`fractions.Fraction` objects, lowest degree first, and delegates the
heavy exact algorithms (gcd, factorisation, resultants) to :mod:`sympy`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy import QQ

BigRat = Fraction

#: Internal generator of every polynomial ring; the printed variable name is
#: chosen at formatting time.
GEN = sympy.Symbol("t")

Scalar = Union[int, Fraction]


def to_fraction(value: object) -> Fraction:
    """Convert ints, Fractions and sympy rationals to :class:`Fraction`."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Rational) or (
        hasattr(value, "numerator") and hasattr(value, "denominator")
    ):
        # covers the ground types of sympy's QQ domain
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"not a rational number: {value!r}")


def _rational(c: Fraction) -> sympy.Rational:
    return sympy.Rational(c.numerator, c.denominator)


class Poly:
    """Polynomial with rational coefficients (lowest degree first)."""

    __slots__ = ("_coeffs", "_sym")

    def __init__(self, coeffs: Iterable[object] = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(cs)
        self._sym = None

    # -- construction -------------------------------------------------
    @classmethod
    def from_sympy(cls, p: sympy.Poly) -> "Poly":
        return cls(reversed([to_fraction(c) for c in p.all_coeffs()]))

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def gen(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence[Scalar]) -> "Poly":
        result = cls([1])
        for r in roots:
            result = result * cls([-to_fraction(r), 1])
        return result

    # -- basic properties ----------------------------------------------
    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.leading_coefficient
        return Poly(c / lc for c in self._coeffs)

    def to_sympy(self) -> sympy.Poly:
        if self._sym is None:
            self._sym = sympy.Poly([_rational(c) for c in reversed(self._coeffs)] or [0], GEN, domain=QQ)
        return self._sym

    def to_integral(self) -> Tuple[int, "Poly"]:
        """Return ``(m, m*self)`` with ``m`` the lcm of the denominators."""
        m = math.lcm(1, *(c.denominator for c in self._coeffs))
        return m, self.scale(m)

    def scale(self, c: Scalar) -> "Poly":
        c = to_fraction(c)
        return Poly(x * c for x in self._coeffs)

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _coerce(other: object) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self._coeffs), len(o._coeffs))
        return Poly(self.coefficient(i) + o.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self._coeffs)

    def __sub__(self, other: object) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return Poly()
        if len(self._coeffs) * len(o._coeffs) > 4096:
            return Poly.from_sympy(self.to_sympy() * o.to_sympy())
        out: List[Fraction] = [Fraction(0)] * (len(self._coeffs) + len(o._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o._coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent for a polynomial")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = self.to_sympy().div(other.to_sympy())
        return Poly.from_sympy(q), Poly.from_sympy(r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other``."""
        return (other % self).is_zero()

    def gcd(self, other: "Poly") -> "Poly":
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        return Poly.from_sympy(self.to_sympy().gcd(other.to_sympy())).monic()

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self._coeffs) if i > 0)

    def resultant(self, other: "Poly") -> Fraction:
        return to_fraction(self.to_sympy().resultant(other.to_sympy()))

    def discriminant(self) -> Fraction:
        return to_fraction(self.to_sympy().discriminant())

    def compose(self, other: "Poly") -> "Poly":
        result = Poly()
        for c in reversed(self._coeffs):
            result = result * other + c
        return result

    def reverse(self, degree: int | None = None) -> "Poly":
        """Coefficients reversed as a polynomial of formal degree ``degree``."""
        n = self.degree if degree is None else degree
        if n < self.degree:
            raise ValueError("formal degree below actual degree")
        padded = list(self._coeffs) + [Fraction(0)] * (n - self.degree)
        return Poly(reversed(padded))

    # -- evaluation -----------------------------------------------------
    def __call__(self, x):
        if isinstance(x, np.ndarray):
            return np.polyval(self.numeric_coefficients(), x)
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
        else:
            acc = 0j
        for c in reversed(self._coeffs):
            acc = acc * x + (c if isinstance(acc, Fraction) else complex(c))
        return acc

    def numeric_coefficients(self) -> np.ndarray:
        """Float coefficients, highest degree first (``numpy.polyval`` order)."""
        if not self._coeffs:
            return np.zeros(1)
        return np.array([float(c) for c in reversed(self._coeffs)])

    def height(self) -> float:
        return max((abs(float(c)) for c in self._coeffs), default=0.0)

    def integer_content_height(self) -> int:
        _, p = self.to_integral()
        return max((abs(int(c)) for c in p._coeffs), default=0)

    # -- comparison and display ----------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def format(self, variable: str = "t") -> str:
        if not self._coeffs:
            return "0"
        terms: List[str] = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = variable if i == 1 else f"{variable}^{i}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag}*{mono}"
                else:
                    body = f"({mag})*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({self.format()!r})"


def factor_squarefree_rational(f: Poly) -> Tuple[Fraction, List[Tuple[Poly, int]]]:
    """Factor ``f`` into monic irreducible factors over the rationals.

    Returns the leading coefficient and a list of ``(factor, multiplicity)``
    sorted by degree and then by coefficients, so the output is stable.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return f.leading_coefficient, []
    lc, factors = f.to_sympy().factor_list()
    out = []
    lead = to_fraction(lc)
    for fac, mult in factors:
        p = Poly.from_sympy(fac)
        lead *= p.leading_coefficient ** mult
        out.append((p.monic(), int(mult)))
    out.sort(key=lambda pm: (pm[0].degree, pm[0].coefficients))
    return lead, out


def squarefree_parts(f: Poly) -> List[Tuple[Poly, int]]:
    """Square-free decomposition ``f = lc * prod g_i^i`` with monic ``g_i``."""
    if f.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    _, parts = f.to_sympy().sqf_list()
    return [(Poly.from_sympy(g).monic(), int(m)) for g, m in parts]


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    return bool(f.to_sympy().is_irreducible)
