"""Places of the rational function field and their valuations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from exactalg.poly import Poly, factor_squarefree_rational, is_irreducible
from exactalg.ratfunc import RatFunc
from utils.errors import PlaceError

_INFINITY_NAMES = {"inf", "infinity", "oo", "∞"}


@dataclass(frozen=True)
class Place:
    """A closed point of the projective line over the rationals.

    ``poly`` is a monic irreducible polynomial for a finite place and
    ``None`` for the place at infinity.
    """

    poly: Optional[Poly] = None

    def __post_init__(self) -> None:
        if self.poly is None:
            return
        if self.poly.degree < 1:
            raise PlaceError(f"place polynomial must be non-constant: {self.poly}")
        if self.poly.leading_coefficient != 1:
            object.__setattr__(self, "poly", self.poly.monic())
        if not is_irreducible(self.poly):
            raise PlaceError(f"place polynomial is reducible over Q: {self.poly}")

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def at(cls, root: Union[int, Fraction]) -> "Place":
        """Degree-one place ``t - root``."""
        return cls(Poly([-Fraction(root), 1]))

    @classmethod
    def parse(cls, text: str, variable: str = "t") -> "Place":
        from exactalg.expressions import parse_polynomial

        stripped = text.strip()
        if stripped.lower() in _INFINITY_NAMES:
            return cls.infinity()
        return cls(parse_polynomial(stripped, variable))

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def local_parameter(self) -> RatFunc:
        if self.poly is None:
            return RatFunc(1, Poly.gen())
        return RatFunc(self.poly)

    def rational_point(self) -> Optional[Fraction]:
        """The root of a degree-one finite place."""
        if self.poly is not None and self.poly.degree == 1:
            return -self.poly.coefficient(0)
        return None

    def label(self, variable: str = "t") -> str:
        if self.poly is None:
            return "inf"
        return self.poly.format(variable)

    def sort_key(self):
        if self.poly is None:
            return (1, 0, ())
        return (0, self.poly.degree, self.poly.coefficients)

    def __str__(self) -> str:
        return self.label()


def poly_order(f: Poly, p: Poly) -> int:
    """Multiplicity of the irreducible ``p`` in the non-zero polynomial ``f``."""
    if f.is_zero():
        raise PlaceError("order of the zero polynomial is undefined")
    k = 0
    q, r = divmod(f, p)
    while r.is_zero():
        k += 1
        f = q
        q, r = divmod(f, p)
    return k


def valuation(f: Union[RatFunc, Poly], p: Place) -> int:
    """Order of vanishing of ``f`` at ``p``; negative at poles."""
    f = RatFunc.coerce(f)
    if f.is_zero():
        raise PlaceError("valuation of the zero function is undefined")
    if p.is_infinite:
        return f.den.degree - f.num.degree
    return poly_order(f.num, p.poly) - poly_order(f.den, p.poly)


def valuation_or_none(f: Union[RatFunc, Poly], p: Place) -> Optional[int]:
    """Like :func:`valuation` but ``None`` (meaning infinite) for zero."""
    f = RatFunc.coerce(f)
    if f.is_zero():
        return None
    return valuation(f, p)


def places_of(*functions: Union[RatFunc, Poly]) -> List[Place]:
    """Places where any of ``functions`` has a zero or a pole, plus infinity."""
    seen = {}
    for f in functions:
        f = RatFunc.coerce(f)
        if f.is_zero():
            continue
        for part in (f.num, f.den):
            if part.degree < 1:
                continue
            _, factors = factor_squarefree_rational(part)
            for fac, _mult in factors:
                seen.setdefault(fac, Place(fac))
    out = sorted(seen.values(), key=Place.sort_key)
    out.append(Place.infinity())
    return out


def reduce_at(f: Union[RatFunc, Poly], p: Place) -> Poly:
    """Residue class of a function regular at ``p``.

    For a finite place the result is the remainder modulo ``p`` (a constant
    for degree-one places); at infinity it is the constant value.
    """
    f = RatFunc.coerce(f)
    if f.is_zero():
        return Poly()
    if valuation(f, p) < 0:
        raise PlaceError(f"{f} has a pole at {p}")
    if p.is_infinite:
        value = f.value_at_infinity()
        return Poly.constant(value)
    num = f.num % p.poly
    den = f.den % p.poly
    # invert den modulo p via the extended Euclidean algorithm of sympy
    inv = den.to_sympy().invert(p.poly.to_sympy())
    return (num * Poly.from_sympy(inv)) % p.poly


def principal_divisor_degree(f: Union[RatFunc, Poly]) -> int:
    """Sum of ``valuation * degree`` over all places; zero for every ``f != 0``."""
    return sum(valuation(f, p) * p.degree for p in places_of(f))
