"""Rational functions in one variable over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Union

import numpy as np

from exactalg.poly import Poly, to_fraction
from utils.errors import RatFuncZeroDivisionError

Operand = Union["RatFunc", Poly, int, Fraction]


class RatFunc:
    """Quotient ``num/den`` kept in canonical form.

    The numerator and denominator are coprime and the denominator is monic,
    so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[Poly, int, Fraction], den: Union[Poly, int, Fraction] = 1):
        num = num if isinstance(num, Poly) else Poly.constant(num)
        den = den if isinstance(den, Poly) else Poly.constant(den)
        if den.is_zero():
            raise RatFuncZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.constant(1)
            return
        g = num.gcd(den)
        if not g.is_constant():
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.leading_coefficient
        self.num = num.scale(1 / lc)
        self.den = den.scale(1 / lc)

    @classmethod
    def coerce(cls, value: Operand) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return cls(value)
        if isinstance(value, (int, Fraction)):
            return cls(Poly.constant(value))
        raise TypeError(f"cannot convert {value!r} to a rational function")

    @classmethod
    def gen(cls) -> "RatFunc":
        return cls(Poly.gen())

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coefficient(0)

    @property
    def degree(self) -> int:
        """Degree as a map of the projective line, ``max(deg num, deg den)``."""
        return max(self.num.degree, self.den.degree)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Operand) -> "RatFunc":
        o = RatFunc.coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: Operand) -> "RatFunc":
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other: Operand) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other: Operand) -> "RatFunc":
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "RatFunc":
        o = RatFunc.coerce(other)
        if o.is_zero():
            raise RatFuncZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: Operand) -> "RatFunc":
        return RatFunc.coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            if self.is_zero():
                raise RatFuncZeroDivisionError("negative power of zero")
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose(self, inner: Operand) -> "RatFunc":
        """Substitute ``inner`` for the variable."""
        g = RatFunc.coerce(inner)
        return _horner(self.num, g) / _horner(self.den, g)

    # -- evaluation ------------------------------------------------------
    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            d = self.den(Fraction(x))
            if d == 0:
                raise RatFuncZeroDivisionError(f"{self} has a pole at {x}")
            return self.num(Fraction(x)) / d
        return self.num(x) / self.den(x)

    def numeric(self) -> Callable[[np.ndarray], np.ndarray]:
        """Vectorised complex evaluator."""
        n = self.num.numeric_coefficients()
        d = self.den.numeric_coefficients()

        def evaluate(z):
            z = np.asarray(z, dtype=complex)
            return np.polyval(n, z) / np.polyval(d, z)

        return evaluate

    def value_at_infinity(self):
        """Value at ``t = oo`` as a Fraction, or ``None`` for a pole."""
        if self.num.degree > self.den.degree:
            return None
        if self.num.degree < self.den.degree:
            return Fraction(0)
        return self.num.leading_coefficient / self.den.leading_coefficient

    # -- comparison and display --------------------------------------------
    def __eq__(self, other: object) -> bool:
        try:
            o = RatFunc.coerce(other)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def format(self, variable: str = "t") -> str:
        if self.den == Poly.constant(1):
            return self.num.format(variable)
        num = self.num.format(variable)
        den = self.den.format(variable)
        if len([c for c in self.num.coefficients if c]) > 1:
            num = f"({num})"
        if len([c for c in self.den.coefficients if c]) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatFunc({self.format()!r})"


def _horner(p: Poly, g: RatFunc) -> RatFunc:
    acc = RatFunc(Poly())
    for c in reversed(p.coefficients):
        acc = acc * g + c
    return acc


def ratfunc_arith(a: Operand, b: Operand, op: str) -> RatFunc:
    """Apply ``op`` (one of ``+ - * /``; ``×``/``÷`` accepted) to ``a`` and ``b``."""
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def as_ratfunc(value: object) -> RatFunc:
    if isinstance(value, (RatFunc, Poly, int, Fraction)):
        return RatFunc.coerce(value)
    return RatFunc.coerce(to_fraction(value))
