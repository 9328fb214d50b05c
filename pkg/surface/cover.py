"""Base change of an elliptic surface along a cover ``u -> t = f(u)``."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import sympy
from sympy import QQ

from exactalg import Place, Poly, RatFunc, factor_squarefree_rational, valuation
from exactalg.expressions import parse_ratfunc
from exactalg.poly import GEN
from surface.invariants import SurfaceInvariants, surface_invariants
from surface.minimal import bad_fibers
from surface.model import WeierstrassModel
from utils.errors import CoverCollisionError, InputError, InvariantMismatchError

logger = logging.getLogger(__name__)

_TARGET = sympy.Symbol("z")


@dataclass(frozen=True)
class Ramification:
    """A ramification point of the cover and its branch value.

    ``point`` lives on the source line (variable ``u``), ``branch`` on the
    base line (variable ``t``).
    """

    point: Place
    index: int
    branch: Place


@dataclass(frozen=True)
class CoverSpec:
    """Rational map ``f`` from the ``u``-line to the ``t``-line."""

    map: RatFunc
    ramification: Tuple[Ramification, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "map", RatFunc.coerce(self.map))
        if self.map.is_constant():
            raise InputError(f"cover map must be non-constant: {self.map}")
        if not self.ramification:
            object.__setattr__(self, "ramification", tuple(ramification_data(self.map)))

    @classmethod
    def parse(cls, text: str, variable: str = "u") -> "CoverSpec":
        return cls(parse_ratfunc(text, variable))

    @property
    def degree(self) -> int:
        return self.map.degree

    def genus(self) -> int:
        """Genus of the source from Riemann-Hurwitz over the base line."""
        total = sum((r.index - 1) * r.point.degree for r in self.ramification)
        twice = self.degree * (-2) + total
        if twice % 2:
            raise InvariantMismatchError("Riemann-Hurwitz parity", "even", twice)
        return twice // 2 + 1

    def branch_places(self) -> List[Place]:
        seen = {}
        for r in self.ramification:
            seen.setdefault(r.branch, r.branch)
        return list(seen)


def _branch_of(w: Poly, f: RatFunc) -> Place:
    """Closed point of the base line under the irreducible point ``w = 0``."""
    if w.divides(f.den):
        return Place.infinity()
    res = sympy.resultant(
        w.to_sympy().as_expr(), f.num.to_sympy().as_expr() - _TARGET * f.den.to_sympy().as_expr(), GEN
    )
    image = Poly.from_sympy(sympy.Poly(res, _TARGET, domain=QQ))
    _, factors = factor_squarefree_rational(image)
    return Place(factors[0][0])


def _infinity_data(f: RatFunc) -> Tuple[int, Place]:
    """Ramification index and branch value of the point ``u = oo``."""
    at_inf = f.value_at_infinity()
    s_form = f.compose(RatFunc(1, Poly.gen()))
    s_place = Place.at(0)
    if at_inf is None:
        return -valuation(s_form, s_place), Place.infinity()
    return valuation(s_form - at_inf, s_place), Place.at(at_inf)


def ramification_data(f: RatFunc) -> List[Ramification]:
    """Ramification points of ``f`` from the Wronskian ``P'Q - PQ'``.

    An irreducible factor of multiplicity ``m`` of the Wronskian marks
    points of index ``m + 1``; the point at infinity is examined directly.
    """
    p, q = f.num, f.den
    wronskian = p.derivative() * q - p * q.derivative()
    out: List[Ramification] = []
    if wronskian.degree >= 1:
        _, factors = factor_squarefree_rational(wronskian)
        for w, mult in factors:
            out.append(Ramification(Place(w), mult + 1, _branch_of(w, f)))
    e_inf, branch_inf = _infinity_data(f)
    if e_inf > 1:
        out.append(Ramification(Place.infinity(), e_inf, branch_inf))
    return out


def pull_back_model(m: WeierstrassModel, cover: CoverSpec) -> WeierstrassModel:
    return WeierstrassModel(m.A.compose(cover.map), m.B.compose(cover.map), variable="u")


def pull_back_point(point, cover: CoverSpec, pulled: Optional[WeierstrassModel] = None):
    """Transport a section ``(x(t), y(t))`` to ``(x(f(u)), y(f(u)))``.

    ``pulled`` is the already pulled-back model, when the caller has it.
    """
    from mwgroup.points import SectionPoint

    pulled = pulled or pull_back_model(point.model, cover)
    if point.is_zero:
        return SectionPoint.zero(pulled)
    return SectionPoint(pulled, point.x.compose(cover.map), point.y.compose(cover.map))


@dataclass(frozen=True)
class PullBackResult:
    model: WeierstrassModel
    invariants: SurfaceInvariants
    cover: CoverSpec
    collisions: Tuple[Ramification, ...] = ()
    shortcut: Optional[SurfaceInvariants] = None


def pull_back(m: WeierstrassModel, cover: CoverSpec, strict: bool = True) -> PullBackResult:
    """Pull ``m`` back along ``cover`` and cross-check the invariants.

    In strict mode a branch value on a bad place raises
    :class:`CoverCollisionError`, and the directly computed invariants must
    agree with ``(g', N d, N delta)``. Non-strict mode only reports the
    collisions and the direct invariants.
    """
    if m.variable != "t":
        raise InputError("covers can only be applied to models in the base variable t")
    base = surface_invariants(m, 0)
    bad = {f.place: f for f in bad_fibers(m)}
    collisions = tuple(r for r in cover.ramification if r.branch in bad)
    for r in collisions:
        label = r.branch.label("t")
        if strict:
            raise CoverCollisionError(label, f"{label} ({bad[r.branch].kodaira_type})")
        logger.warning(f"cover is branched over the bad place {label}")

    g_new = cover.genus()
    pulled = pull_back_model(m, cover)
    direct = surface_invariants(pulled, g_new)
    n = cover.degree
    shortcut = None
    if not collisions:
        shortcut = SurfaceInvariants(g_new, n * base.d, n * base.delta)
        for name in ("g", "d", "delta", "bound"):
            expected, actual = getattr(shortcut, name), getattr(direct, name)
            if expected != actual:
                raise InvariantMismatchError(f"pulled-back {name}", expected, actual)
    logger.info(
        f"pulled back along a degree {n} cover: g'={direct.g} d'={direct.d} "
        f"delta'={direct.delta} bound'={direct.bound}"
    )
    return PullBackResult(pulled, direct, cover, collisions, shortcut)
