"""Short Weierstrass models ``y^2 = x^3 + A x + B`` over Q(t)."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple, Union

from exactalg import Poly, RatFunc
from exactalg.expressions import parse_ratfunc
from utils.errors import SingularModelError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeierstrassModel:
    """Jacobian elliptic surface in short Weierstrass form.

    ``variable`` only affects how the coefficients are printed and parsed;
    it is ``"u"`` for models obtained by pulling back along a cover.
    """

    A: RatFunc
    B: RatFunc
    variable: str = "t"

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", RatFunc.coerce(self.A))
        object.__setattr__(self, "B", RatFunc.coerce(self.B))
        if self.discriminant.is_zero():
            raise SingularModelError(
                f"4A^3 + 27B^2 vanishes identically for A={self.A}, B={self.B}"
            )

    @classmethod
    def parse(cls, a_text: str, b_text: str, variable: str = "t") -> "WeierstrassModel":
        return cls(parse_ratfunc(a_text, variable), parse_ratfunc(b_text, variable), variable)

    @property
    def discriminant(self) -> RatFunc:
        return 4 * self.A ** 3 + 27 * self.B ** 2

    @property
    def j_invariant(self) -> RatFunc:
        return 1728 * 4 * self.A ** 3 / self.discriminant

    def is_isotrivial(self) -> bool:
        return self.j_invariant.is_constant()

    def rhs(self, x: RatFunc) -> RatFunc:
        return x ** 3 + self.A * x + self.B

    def contains(self, x: RatFunc, y: RatFunc) -> bool:
        return RatFunc.coerce(y) ** 2 == self.rhs(RatFunc.coerce(x))

    def rescale(self, u: Union[RatFunc, Poly, int]) -> "WeierstrassModel":
        """Isomorphic model ``(u^4 A, u^6 B)``."""
        u = RatFunc.coerce(u)
        return WeierstrassModel(u ** 4 * self.A, u ** 6 * self.B, self.variable)

    def integral_scaling(self) -> Tuple["WeierstrassModel", Poly]:
        """Polynomial model ``(D^4 A, D^6 B)`` and the scaling ``D``.

        ``D`` is the least monic polynomial clearing the denominators, built
        from the factors of ``den(A)`` and ``den(B)``.
        """
        from exactalg import factor_squarefree_rational, poly_order

        d = Poly.constant(1)
        seen = set()
        for part in (self.A.den, self.B.den):
            if part.degree < 1:
                continue
            _, factors = factor_squarefree_rational(part)
            for fac, _ in factors:
                if fac in seen:
                    continue
                seen.add(fac)
                a = poly_order(self.A.den, fac) if self.A else 0
                b = poly_order(self.B.den, fac) if self.B else 0
                k = max(-(-a // 4), -(-b // 6))
                d = d * fac ** k
        scaled = self.rescale(RatFunc(d))
        return scaled, d

    def format(self) -> str:
        v = self.variable
        return f"y^2 = x^3 + ({self.A.format(v)})*x + ({self.B.format(v)})"

    def __str__(self) -> str:
        return self.format()


def standard_invariants(m: WeierstrassModel) -> Tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """Return ``(c4, c6, delta, j)`` for the short model."""
    c4 = -48 * m.A
    c6 = -864 * m.B
    delta = m.discriminant
    j = m.j_invariant
    return c4, c6, delta, j
