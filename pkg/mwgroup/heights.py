"""Naive and canonical heights of sections and the S-integral height bound.

The exact canonical height is evaluated as ``2d + 2(P.O) - sum contr_v(P)``
from local data read off the locally minimal models. The duplication limit
``4^-n h(2^n P)`` is computed independently as a numerical cross-check.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import sympy

from exactalg import Place, RatFunc, factor_squarefree_rational, places_of
from exactalg.places import valuation_or_none
from mwgroup.points import SectionPoint, multiply
from mwgroup.torsion import is_torsion
from surface.invariants import SurfaceInvariants, surface_invariants
from surface.kodaira import NON_IDENTITY_CONTRIBUTION, KodairaFamily, KodairaType
from surface.minimal import FiberData, fiber_at, local_fibers
from utils.errors import (
    ComponentUndeterminedError,
    InvariantMismatchError,
    TorsionPointError,
)

logger = logging.getLogger(__name__)


class ContributionTable:
    """Local height corrections ``contr_v`` indexed by fiber type and component.

    Component ``0`` is the identity component. For ``I_n`` the components
    are numbered cyclically; for ``I_n*`` component ``1`` is the near and
    ``2``/``3`` the far components.
    """

    @staticmethod
    def value(kodaira_type: KodairaType, component: int) -> Fraction:
        if component == 0:
            return Fraction(0)
        family, n = kodaira_type.family, kodaira_type.n
        if family is KodairaFamily.I:
            if not 0 < component < n:
                raise ValueError(f"component {component} does not exist on {kodaira_type}")
            return Fraction(component * (n - component), n)
        if family is KodairaFamily.I_STAR:
            if component == 1:
                return Fraction(1)
            if component in (2, 3):
                return 1 + Fraction(n, 4)
            raise ValueError(f"component {component} does not exist on {kodaira_type}")
        if family in NON_IDENTITY_CONTRIBUTION:
            if component >= kodaira_type.component_group_order:
                raise ValueError(f"component {component} does not exist on {kodaira_type}")
            return NON_IDENTITY_CONTRIBUTION[family]
        raise ValueError(f"{kodaira_type} has no non-identity simple components")


@dataclass(frozen=True)
class LocalSectionData:
    place: Place
    kodaira_type: KodairaType
    intersection: int
    identity: bool
    component: Optional[int]
    contribution: Optional[Fraction]


@dataclass
class HeightReport:
    naive_height: int
    canonical_limit: float
    canonical_limit_error: float
    canonical_exact: Optional[Fraction]
    po_intersection: int
    bound_rhs: int
    t_size: int
    is_s_integral: bool
    holds: bool
    equality: bool
    poles_outside_s: List[str] = field(default_factory=list)


def _gt0(v: Optional[int]) -> bool:
    """``v > 0`` with ``None`` standing for a zero function."""
    return v is None or v > 0


def naive_height(p: SectionPoint) -> int:
    """``max(deg num x, deg den x)``."""
    if p.is_zero:
        raise TorsionPointError(1)
    return p.x.degree


def local_minimal_coords(p: SectionPoint, f: FiberData) -> Tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """``(x, y, A, B)`` rescaled to the model that is minimal at ``f.place``."""
    u = f.place.local_parameter() ** f.u_order
    m = p.model
    return p.x / u ** 2, p.y / u ** 3, m.A / u ** 4, m.B / u ** 6


def local_intersection(p: SectionPoint, f: FiberData) -> int:
    """``(P.O)`` at one closed point (per geometric point)."""
    x, y, _, _ = local_minimal_coords(p, f)
    vx = valuation_or_none(x, f.place)
    vy = valuation_or_none(y, f.place)
    if vx is None or vx >= 0:
        if vy is not None and vy < 0:
            raise InvariantMismatchError(f"pole pattern at {f.place}", "(-2m, -3m)", (vx, vy))
        return 0
    if vx % 2 or vy is None or 2 * vy != 3 * vx:
        raise InvariantMismatchError(f"pole pattern at {f.place}", "(-2m, -3m)", (vx, vy))
    return -vx // 2


def _places_for(p: SectionPoint, fibers: Iterable[FiberData]) -> List[FiberData]:
    known = {f.place: f for f in fibers}
    for place in places_of(p.x):
        if place not in known:
            known[place] = fiber_at(p.model, place)
    return sorted(known.values(), key=lambda f: f.place.sort_key())


def intersection_with_zero(
    p: SectionPoint, fibers: Sequence[FiberData]
) -> Tuple[int, Dict[Place, int]]:
    """Total ``(P.O)`` weighted by place degree and the per-place values."""
    if p.is_zero:
        raise TorsionPointError(1)
    per_place: Dict[Place, int] = {}
    for f in _places_for(p, fibers):
        m = local_intersection(p, f)
        if m:
            per_place[f.place] = m
    total = sum(m * place.degree for place, m in per_place.items())
    return total, per_place


def _singular_x(f: FiberData, a_min: RatFunc, b_min: RatFunc) -> RatFunc:
    if f.kodaira_type.is_multiplicative:
        return -3 * b_min / (2 * a_min)
    return RatFunc(0)


def passes_identity_component(p: SectionPoint, f: FiberData) -> bool:
    """True when ``P`` meets the identity component of the fiber at ``f.place``."""
    if p.is_zero or f.component_group_order == 1:
        return True
    if local_intersection(p, f) > 0:
        return True
    x, y, a_min, b_min = local_minimal_coords(p, f)
    x_s = _singular_x(f, a_min, b_min)
    at_singular = _gt0(valuation_or_none(y, f.place)) and _gt0(
        valuation_or_none(x - x_s, f.place)
    )
    return not at_singular


def multiplicative_component(p: SectionPoint, f: FiberData) -> int:
    """Component index ``i`` in ``[0, n/2]`` met by ``P`` on an ``I_n`` fiber."""
    n = f.kodaira_type.n
    if passes_identity_component(p, f):
        return 0
    x, y, a_min, b_min = local_minimal_coords(p, f)
    vs = valuation_or_none(x - _singular_x(f, a_min, b_min), f.place)
    vy = valuation_or_none(y, f.place)
    orders = [v for v in (vs, vy) if v is not None]
    return min(orders + [n // 2])


def local_section_data(p: SectionPoint, f: FiberData) -> LocalSectionData:
    """Intersection, component and height correction at one fiber.

    ``contribution`` is ``None`` when the component cannot be told from
    the identity test alone (non-identity on ``I_n*`` with ``n > 0``).
    """
    kt = f.kodaira_type
    meets = local_intersection(p, f)
    identity = passes_identity_component(p, f)
    component: Optional[int] = 0 if identity else None
    contribution: Optional[Fraction] = Fraction(0) if identity else None
    if not identity:
        if kt.is_multiplicative:
            component = multiplicative_component(p, f)
            contribution = ContributionTable.value(kt, component)
        elif kt.family is KodairaFamily.I_STAR and kt.n == 0:
            component = 1
            contribution = Fraction(1)
        elif kt.family in NON_IDENTITY_CONTRIBUTION:
            component = 1
            contribution = NON_IDENTITY_CONTRIBUTION[kt.family]
    return LocalSectionData(f.place, kt, meets, identity, component, contribution)


def canonical_height_exact(
    p: SectionPoint, fibers: Optional[Sequence[FiberData]] = None, inv: Optional[SurfaceInvariants] = None
) -> Fraction:
    """Exact canonical height ``2d + 2(P.O) - sum contr``.

    When some component is not determined by the identity test, ``P`` is
    replaced by ``mP`` with ``m`` the lcm of the component group orders,
    which meets every identity component, and ``h(P) = h(mP)/m^2``.
    """
    if p.is_zero:
        raise TorsionPointError(1)
    fibers = list(fibers) if fibers is not None else local_fibers(p.model)
    inv = inv or surface_invariants(p.model)
    bad = [f for f in fibers if f.is_bad]
    local = [local_section_data(p, f) for f in bad]
    if all(item.contribution is not None for item in local):
        po, _ = intersection_with_zero(p, fibers)
        correction = sum((item.contribution * item.place.degree for item in local), Fraction(0))
        return 2 * inv.d + 2 * po - correction

    m = math.lcm(*(f.component_group_order for f in bad))
    logger.info(f"component undetermined; replacing the section by {m}P")
    q = multiply(p, m)
    if q.is_zero:
        raise TorsionPointError(m)
    for f in bad:
        if not passes_identity_component(q, f):
            raise ComponentUndeterminedError(
                f"{m}P misses the identity component at {f.place}", place=str(f.place)
            )
    po, _ = intersection_with_zero(q, fibers)
    return Fraction(2 * inv.d + 2 * po, m * m)


def _sympy_parts(f: RatFunc) -> Tuple[sympy.Poly, sympy.Poly]:
    return f.num.to_sympy(), f.den.to_sympy()


def _degree(p: sympy.Poly) -> int:
    return 0 if p.is_zero else p.degree()


def canonical_height_limit(p: SectionPoint, n_steps: int = 4) -> Tuple[float, float]:
    """Duplication limit ``4^-n h(2^n P)`` with an empirical error bound.

    Doubling runs on the x-coordinate of a polynomial model. Common factors
    of the doubled numerator and denominator can only sit on the zeros of
    the discriminant, so only those are divided out.
    """
    if p.is_zero:
        raise TorsionPointError(1)
    model, scale = p.model.integral_scaling()
    x = p.x * RatFunc(scale) ** 2
    num, den = _sympy_parts(x)
    a = model.A.num.to_sympy()
    b = model.B.num.to_sympy()
    _, factors = factor_squarefree_rational(model.discriminant.num)
    primes = [fac.to_sympy() for fac, _ in factors]
    heights = [max(_degree(num), _degree(den))]
    for step in range(n_steps):
        n2, d2 = num ** 2, den ** 2
        new_num = n2 ** 2 - 2 * a * n2 * d2 - 8 * b * num * den * d2 + a ** 2 * d2 ** 2
        new_den = 4 * den * (num * n2 + a * num * d2 + b * den * d2)
        if new_den.is_zero:
            raise TorsionPointError(2 ** (step + 1))
        for prime in primes:
            while new_den.rem(prime).is_zero and new_num.rem(prime).is_zero:
                new_num = new_num.exquo(prime)
                new_den = new_den.exquo(prime)
        num, den = new_num, new_den
        heights.append(max(_degree(num), _degree(den)))
    value = heights[-1] / 4 ** n_steps
    spread = max((abs(heights[k] - 4 * heights[k - 1]) for k in range(1, len(heights))), default=0)
    error = spread / (3 * 4 ** n_steps)
    logger.debug(f"duplication heights {heights}: limit {value} +/- {error}")
    return value, error


def discriminant_places(model_fibers: Sequence[FiberData], discriminant: RatFunc) -> Set[Place]:
    """Places where the discriminant of the given model vanishes.

    These are the roots of its numerator and every bad place. Infinity is
    also included when the model has to be rescaled there to become minimal.
    """
    places: Set[Place] = set()
    if discriminant.num.degree > 0:
        _, factors = factor_squarefree_rational(discriminant.num)
        places.update(Place(fac) for fac, _ in factors)
    for f in model_fibers:
        if f.is_bad or (f.place.is_infinite and f.u_order > 0):
            places.add(f.place)
    return places


def t_size(model_fibers: Sequence[FiberData], s_places: Iterable[Place], discriminant: RatFunc) -> int:
    """Number of geometric points in ``S`` together with the zeros of the discriminant."""
    places = discriminant_places(model_fibers, discriminant)
    places.update(s_places)
    return sum(p.degree for p in places)


def poles_outside(p: SectionPoint, s_places: Iterable[Place]) -> List[Place]:
    """Places outside ``S`` where ``x(P)`` or ``y(P)`` has a pole."""
    s_set = set(s_places)
    out = []
    for place in places_of(p.x, p.y):
        if place in s_set:
            continue
        vx = valuation_or_none(p.x, place)
        vy = valuation_or_none(p.y, place)
        if (vx is not None and vx < 0) or (vy is not None and vy < 0):
            out.append(place)
    return out


def height_bound_check(
    p: SectionPoint,
    s_places: Sequence[Place],
    n_steps: int = 4,
    n_max: int = 12,
    base_genus: int = 0,
) -> HeightReport:
    """Check ``h(P) <= 4g - 4 + 2|T|`` for an S-integral non-torsion section.

    ``P`` is S-integral when ``x(P)`` and ``y(P)`` have no poles outside
    ``S``, and ``T`` is ``S`` together with the zeros of the discriminant of
    the model ``P`` is given on.
    """
    torsion = is_torsion(p, n_max)
    if torsion.is_torsion:
        raise TorsionPointError(torsion.order)
    fibers = local_fibers(p.model)
    inv = surface_invariants(p.model, base_genus)
    exact = canonical_height_exact(p, fibers, inv)
    limit, error = canonical_height_limit(p, n_steps)
    if abs(limit - float(exact)) > error + 1e-9:
        logger.warning(f"duplication limit {limit} +/- {error} disagrees with exact height {exact}")
    po, _ = intersection_with_zero(p, fibers)
    outside = poles_outside(p, s_places)
    integral = not outside
    size = t_size(fibers, s_places, p.model.discriminant)
    rhs = 4 * base_genus - 4 + 2 * size
    holds = (exact <= rhs) if integral else True
    equality = integral and exact == rhs
    if integral and not holds:
        logger.error(f"height bound violated: {exact} > {rhs}")
    v = p.model.variable
    return HeightReport(
        naive_height=naive_height(p),
        canonical_limit=limit,
        canonical_limit_error=error,
        canonical_exact=exact,
        po_intersection=po,
        bound_rhs=rhs,
        t_size=size,
        is_s_integral=integral,
        holds=holds,
        equality=equality,
        poles_outside_s=[place.label(v) for place in outside],
    )
