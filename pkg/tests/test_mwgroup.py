from fractions import Fraction

import pytest

from exactalg import Place, parse_ratfunc
from mwgroup import (
    ContributionTable,
    SectionPoint,
    add,
    canonical_height_exact,
    canonical_height_limit,
    height_bound_check,
    intersection_with_zero,
    is_torsion,
    local_section_data,
    multiply,
    naive_height,
    passes_identity_component,
)
from surface import KodairaType, bad_fibers, fiber_at, local_fibers
from surface.model import WeierstrassModel
import mwgroup.torsion as torsion_search
from utils.errors import OffCurveError, TorsionPointError


def test_doubling_matches_closed_form(cubic_point):
    double = add(cubic_point, cubic_point)
    assert double.x == parse_ratfunc("(t^2 - 6*t + 1)/4")
    assert double.y == parse_ratfunc("(t^3 - 9*t^2 + 15*t + 1)/8")
    assert double == 2 * cubic_point


def test_zero_section_is_neutral(cubic_point, cubic_model):
    zero = SectionPoint.zero(cubic_model)
    assert add(cubic_point, zero) == cubic_point
    assert add(zero, cubic_point) == cubic_point
    assert cubic_point - cubic_point == zero


def test_two_torsion_point(isotrivial_model):
    p = SectionPoint.parse(isotrivial_model, "0", "0")
    assert add(p, p).is_zero
    result = is_torsion(p)
    assert (result.is_torsion, result.order) == (True, 2)


def test_off_curve_point_is_rejected(cubic_model):
    with pytest.raises(OffCurveError):
        SectionPoint.parse(cubic_model, "2", "3")


def test_group_law_is_associative(cubic_point):
    p = cubic_point
    q = multiply(p, 2)
    r = multiply(p, 3)
    assert (p + q) + r == p + (q + r)
    assert multiply(p, -2) == -q
    assert multiply(p, 5) == q + r


def test_is_torsion_examples(cubic_point, cubic_model):
    result = is_torsion(cubic_point, 12)
    assert not result.is_torsion
    assert result.order is None
    assert is_torsion(SectionPoint.zero(cubic_model)).order == 1


def test_naive_heights(cubic_point):
    assert naive_height(cubic_point) == 0
    assert naive_height(multiply(cubic_point, 2)) == 2
    assert naive_height(multiply(cubic_point, 4)) == 8
    with pytest.raises(TorsionPointError):
        naive_height(SectionPoint.zero(cubic_point.model))


def test_contribution_table():
    assert ContributionTable.value(KodairaType.parse("I5"), 2) == Fraction(6, 5)
    assert ContributionTable.value(KodairaType.parse("III"), 1) == Fraction(1, 2)
    assert ContributionTable.value(KodairaType.parse("IV"), 1) == Fraction(2, 3)
    assert ContributionTable.value(KodairaType.parse("I2*"), 1) == 1
    assert ContributionTable.value(KodairaType.parse("I2*"), 3) == Fraction(3, 2)
    assert ContributionTable.value(KodairaType.parse("IV*"), 2) == Fraction(4, 3)
    assert ContributionTable.value(KodairaType.parse("III*"), 1) == Fraction(3, 2)
    assert ContributionTable.value(KodairaType.parse("II*"), 0) == 0
    with pytest.raises(ValueError):
        ContributionTable.value(KodairaType.parse("II"), 1)


def test_intersection_with_zero_examples(cubic_point):
    fibers = local_fibers(cubic_point.model)
    assert intersection_with_zero(cubic_point, fibers)[0] == 0
    assert intersection_with_zero(multiply(cubic_point, 2), fibers)[0] == 0
    total, per_place = intersection_with_zero(multiply(cubic_point, 3), fibers)
    assert total == 2
    assert all(m > 0 for m in per_place.values())


def test_passes_identity_component(cubic_point, isotrivial_model):
    double = multiply(cubic_point, 2)
    assert all(passes_identity_component(double, f) for f in bad_fibers(double.model))
    at_inf = fiber_at(cubic_point.model, Place.infinity())
    assert not passes_identity_component(cubic_point, at_inf)

    p = SectionPoint.parse(isotrivial_model, "0", "0")
    assert not passes_identity_component(p, fiber_at(isotrivial_model, Place.at(0)))
    assert passes_identity_component(p, fiber_at(isotrivial_model, Place.at(1)))


def test_local_section_data_on_iii_star(cubic_point):
    data = local_section_data(cubic_point, fiber_at(cubic_point.model, Place.infinity()))
    assert not data.identity
    assert data.contribution == Fraction(3, 2)


def test_canonical_height_exact_values(cubic_point):
    assert canonical_height_exact(cubic_point) == Fraction(1, 2)
    assert canonical_height_exact(multiply(cubic_point, 2)) == 2
    assert canonical_height_exact(multiply(cubic_point, 3)) == Fraction(9, 2)


def test_canonical_height_is_quadratic_in_random_multiples(cubic_point):
    base = canonical_height_exact(cubic_point)
    for n in (-3, -1, 2, 4, 5):
        assert canonical_height_exact(multiply(cubic_point, n)) == n * n * base


def test_canonical_height_limit_agrees_with_exact(cubic_point):
    for n, exact in ((1, 0.5), (2, 2.0), (3, 4.5)):
        value, error = canonical_height_limit(multiply(cubic_point, n), 4)
        assert abs(value - exact) <= max(error, 0.05)
        assert error < 0.1


def test_twist_point_heights(twist_model, twist_point):
    assert [str(f.kodaira_type) for f in bad_fibers(twist_model)] == ["I0*", "I0*"]
    assert canonical_height_exact(twist_point) == 1
    assert canonical_height_exact(multiply(twist_point, 2)) == 4


def test_height_bound_equality_case(cubic_point):
    report = height_bound_check(multiply(cubic_point, 2), [Place.infinity()])
    assert report.t_size == 3
    assert report.bound_rhs == 2
    assert report.canonical_exact == 2
    assert report.is_s_integral
    assert report.holds and report.equality


def test_height_bound_strict_case(cubic_point):
    report = height_bound_check(cubic_point, [Place.infinity()])
    assert report.canonical_exact == Fraction(1, 2)
    assert report.holds
    assert not report.equality


def test_height_bound_twist_equality(twist_model, twist_point):
    report = height_bound_check(multiply(twist_point, 2), [Place.infinity()])
    assert report.t_size == 4
    assert report.bound_rhs == 4
    assert report.canonical_exact == 4
    assert report.equality


def test_height_bound_flags_poles_outside_s(cubic_point):
    report = height_bound_check(multiply(cubic_point, 3), [])
    assert not report.is_s_integral
    assert report.poles_outside_s
    assert report.holds


def test_height_bound_rejects_torsion(isotrivial_model):
    p = SectionPoint.parse(isotrivial_model, "0", "0")
    with pytest.raises(TorsionPointError) as exc:
        height_bound_check(p, [])
    assert exc.value.order == 2


def test_constant_point_on_constant_curve_is_torsion_free():
    model = WeierstrassModel.parse("-1", "1")
    p = SectionPoint.parse(model, "1", "1")
    assert not is_torsion(p, 6).is_torsion


def test_positive_height_settles_infinite_order_without_multiples(cubic_point, monkeypatch):
    def no_group_law(*args):
        raise AssertionError("multiples should not be built")

    monkeypatch.setattr(torsion_search, "add", no_group_law)
    result = is_torsion(multiply(cubic_point, 2), 12)
    assert not result.is_torsion
    assert result.proven_infinite
    assert result.heights == (2,)


def test_group_law_results_skip_the_curve_check(cubic_point, monkeypatch):
    double = multiply(cubic_point, 2)
    monkeypatch.setattr(WeierstrassModel, "contains", lambda self, x, y: False)
    assert add(double, cubic_point) == multiply(cubic_point, 3)
    with pytest.raises(OffCurveError):
        SectionPoint(cubic_point.model, double.x, double.y)


def test_height_bound_counts_discriminant_zeros_of_the_given_model():
    model = WeierstrassModel.parse("-t*(t - 1)^4", "t*(t - 1)^6")
    p = SectionPoint.parse(model, "(t - 1)^2", "(t - 1)^3")
    report = height_bound_check(p, [Place.infinity()])
    assert report.t_size == 4
    assert report.bound_rhs == 4
    assert report.is_s_integral
    assert report.canonical_exact == Fraction(1, 2)
    assert report.holds and not report.equality


def test_s_integrality_reads_poles_of_the_coordinates(cubic_point):
    double = multiply(cubic_point, 2)
    report = height_bound_check(double, [])
    assert not report.is_s_integral
    assert report.poles_outside_s == ["inf"]
    assert report.t_size == 3
