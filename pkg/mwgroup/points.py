"""Sections of an elliptic surface and the chord-tangent group law."""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Optional

from exactalg import RatFunc
from exactalg.expressions import parse_ratfunc
from surface.model import WeierstrassModel
from utils.errors import OffCurveError


@dataclass(frozen=True)
class SectionPoint:
    """A point of ``E(Q(t))``; ``x is None`` encodes the zero section.

    ``verify=False`` skips the on-curve test for results of the group law.
    """

    model: WeierstrassModel
    x: Optional[RatFunc] = None
    y: Optional[RatFunc] = None
    verify: InitVar[bool] = True

    def __post_init__(self, verify: bool) -> None:
        if (self.x is None) != (self.y is None):
            raise OffCurveError("a section needs both coordinates or neither")
        if self.x is None:
            return
        object.__setattr__(self, "x", RatFunc.coerce(self.x))
        object.__setattr__(self, "y", RatFunc.coerce(self.y))
        if verify and not self.model.contains(self.x, self.y):
            v = self.model.variable
            raise OffCurveError(
                f"({self.x.format(v)}, {self.y.format(v)}) does not lie on {self.model}"
            )

    @classmethod
    def zero(cls, model: WeierstrassModel) -> "SectionPoint":
        return cls(model)

    @classmethod
    def parse(cls, model: WeierstrassModel, x_text: str, y_text: str) -> "SectionPoint":
        v = model.variable
        return cls(model, parse_ratfunc(x_text, v), parse_ratfunc(y_text, v))

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __add__(self, other: "SectionPoint") -> "SectionPoint":
        return add(self, other)

    def __neg__(self) -> "SectionPoint":
        return negate(self)

    def __sub__(self, other: "SectionPoint") -> "SectionPoint":
        return add(self, negate(other))

    def __mul__(self, n: int) -> "SectionPoint":
        return multiply(self, n)

    __rmul__ = __mul__

    def format(self) -> str:
        if self.is_zero:
            return "O"
        v = self.model.variable
        return f"({self.x.format(v)}, {self.y.format(v)})"

    def __str__(self) -> str:
        return self.format()


def negate(p: SectionPoint) -> SectionPoint:
    if p.is_zero:
        return p
    return SectionPoint(p.model, p.x, -p.y, verify=False)


def add(p: SectionPoint, q: SectionPoint) -> SectionPoint:
    """Chord-tangent addition with the zero section as origin."""
    if p.model != q.model:
        raise OffCurveError("points lie on different models")
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    if p.x == q.x:
        if p.y == -q.y:
            return SectionPoint.zero(p.model)
        slope = (3 * p.x ** 2 + p.model.A) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope ** 2 - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return SectionPoint(p.model, x3, y3, verify=False)


def multiply(p: SectionPoint, n: int) -> SectionPoint:
    """``n * p`` by double-and-add."""
    if n < 0:
        return multiply(negate(p), -n)
    result = SectionPoint.zero(p.model)
    addend = p
    while n:
        if n & 1:
            result = add(result, addend)
        addend = add(addend, addend)
        n >>= 1
    return result
