from fractions import Fraction

import pytest

from exactalg import Place, RatFunc, parse_ratfunc
from surface import (
    CoverSpec,
    KodairaFamily,
    KodairaType,
    all_multiplicative,
    bad_fibers,
    classify_fiber,
    degenerate_flag,
    degenerate_message,
    fiber_at,
    local_fibers,
    minimalize_at,
    possibly_constant,
    pull_back,
    semistable_inequality_check,
    standard_invariants,
    surface_invariants,
)
from surface.model import WeierstrassModel
from utils.errors import ClassificationError, CoverCollisionError, SingularModelError


def _types(model):
    return {f.place.label(model.variable): str(f.kodaira_type) for f in bad_fibers(model)}


def test_standard_invariants_examples(product_model):
    _, _, delta, _ = standard_invariants(WeierstrassModel.parse("-t", "t"))
    assert delta == parse_ratfunc("-4*t^3 + 27*t^2")
    _, _, _, j = standard_invariants(product_model)
    assert j == parse_ratfunc("1728*t^2/(t^2 - 1)")
    _, _, _, j = standard_invariants(WeierstrassModel.parse("0", "1"))
    assert j == RatFunc(0)


def test_singular_model_is_rejected():
    with pytest.raises(SingularModelError):
        WeierstrassModel.parse("0", "0")
    with pytest.raises(SingularModelError):
        WeierstrassModel.parse("-3*t^2", "2*t^3")


def test_minimalize_removes_fourth_powers():
    m = WeierstrassModel.parse("-t^4", "0")
    ord_a, ord_b, ord_delta, k = minimalize_at(m, Place.at(0))
    assert (ord_a, ord_b, ord_delta, k) == (0, None, 0, 1)


def test_minimalize_at_infinity_of_cubic(cubic_model):
    ord_a, ord_b, ord_delta, k = minimalize_at(cubic_model, Place.infinity())
    assert ord_delta == 9
    assert k == -1
    assert (ord_a, ord_b) == (3, 5)


def test_isotrivial_example_has_i0_star_at_zero(isotrivial_model):
    f = fiber_at(isotrivial_model, Place.at(0))
    assert f.kodaira_type == KodairaType(KodairaFamily.I_STAR, 0)
    assert f.ord_delta_min == 6


@pytest.mark.parametrize(
    "triple, label",
    [
        ((0, 0, 1), "I1"),
        ((0, 0, 7), "I7"),
        ((2, 3, 6), "I0*"),
        ((5, 3, 6), "I0*"),
        ((2, 3, 9), "I3*"),
        ((None, 1, 2), "II"),
        ((1, None, 3), "III"),
        ((None, 2, 4), "IV"),
        ((3, 4, 8), "IV*"),
        ((3, 5, 9), "III*"),
        ((4, 5, 10), "II*"),
        ((1, 1, 0), "I0"),
    ],
)
def test_classify_fiber_table(triple, label):
    assert str(classify_fiber(*triple)) == label


def test_classify_fiber_rejects_inconsistent_triples():
    with pytest.raises(ClassificationError) as exc:
        classify_fiber(0, 1, 3)
    assert exc.value.ord_c6 == 1
    with pytest.raises(ClassificationError):
        classify_fiber(1, 1, 5)
    with pytest.raises(ClassificationError):
        classify_fiber(2, 3, -1)


def test_kodaira_parse_and_component_data():
    assert KodairaType.parse("I4").component_group_order == 4
    assert KodairaType.parse("I2*").component_count == 7
    assert KodairaType.parse("III*").component_group_order == 2
    assert KodairaType.parse("IV").monodromy_trace == -1
    with pytest.raises(ValueError):
        KodairaType.parse("V")


def test_cubic_surface_fibers_and_invariants(cubic_model):
    assert _types(cubic_model) == {"t": "II", "t - 27/4": "I1", "inf": "III*"}
    at_inf = [f for f in local_fibers(cubic_model) if f.place.is_infinite][0]
    assert at_inf.u_order == -1
    inv = surface_invariants(cubic_model)
    assert (inv.d, inv.delta, inv.bound) == (1, 3, 0)
    assert 3 * inv.c2bar - inv.c1bar_sq == inv.bound
    assert inv.euler_characteristic == 12


def test_degenerate_examples(isotrivial_model, product_model, cubic_model):
    inv = surface_invariants(isotrivial_model)
    assert (inv.d, inv.delta, inv.bound) == (1, 2, -1)
    assert degenerate_flag(inv)
    assert "finite" in degenerate_message(inv)

    inv = surface_invariants(product_model)
    assert (inv.d, inv.delta, inv.bound) == (2, 3, -1)
    assert degenerate_flag(inv)

    inv = surface_invariants(cubic_model)
    assert not degenerate_flag(inv)
    assert degenerate_message(inv) is None


def test_invariants_do_not_depend_on_the_model(cubic_model):
    scaled = cubic_model.rescale(RatFunc.gen())
    assert surface_invariants(scaled) == surface_invariants(cubic_model)
    shifted = {f.place: f.u_order for f in local_fibers(scaled)}
    assert shifted[Place.at(0)] == 1


def test_model_with_poles_is_minimalized():
    m = WeierstrassModel.parse("-t/(t - 1)^4", "t/(t - 1)^6")
    inv = surface_invariants(m)
    assert inv.d == 1
    f = fiber_at(m, Place.at(1))
    assert f.u_order == -1
    assert f.kodaira_type.is_good


def test_semistable_check(legendre_model, cubic_model, isotrivial_model):
    assert _types(legendre_model) == {"t": "I2", "t - 1": "I2", "inf": "I2*"}
    inv = surface_invariants(legendre_model)
    check = semistable_inequality_check(inv, all_multiplicative(legendre_model), legendre_model.is_isotrivial())
    assert not check.hypothesis
    assert check.holds

    for model in (cubic_model, isotrivial_model):
        inv = surface_invariants(model)
        check = semistable_inequality_check(inv, all_multiplicative(model), model.is_isotrivial())
        assert not check.hypothesis

    cover = CoverSpec.parse("(1 - u^2)/u^2")
    result = pull_back(legendre_model, cover, strict=False)
    assert sorted(_types(result.model).values()) == ["I2", "I2", "I2", "I4"]
    inv = result.invariants
    assert (inv.g, inv.d, inv.delta, inv.bound) == (0, 1, 5, 2)
    check = semistable_inequality_check(inv, all_multiplicative(result.model), result.model.is_isotrivial())
    assert check.hypothesis and check.conclusion


def test_possibly_constant_needs_constant_j_and_no_bad_fibers(isotrivial_model):
    constant = WeierstrassModel.parse("-1", "1")
    assert possibly_constant(constant, surface_invariants(constant))
    assert not possibly_constant(isotrivial_model, surface_invariants(isotrivial_model))


def test_cover_ramification_and_genus(even_cover):
    assert even_cover.degree == 2
    assert even_cover.genus() == 0
    assert sorted(p.rational_point() for p in even_cover.branch_places()) == [Fraction(1), Fraction(2)]


def test_pull_back_along_cover_unramified_over_bad_places(cubic_model, even_cover):
    result = pull_back(cubic_model, even_cover)
    inv = result.invariants
    assert (inv.g, inv.d, inv.delta, inv.bound) == (0, 2, 6, 2)
    assert result.shortcut == inv
    assert not result.collisions
    assert result.model.variable == "u"


def test_pull_back_collision_is_an_error(cubic_model):
    with pytest.raises(CoverCollisionError) as exc:
        pull_back(cubic_model, CoverSpec.parse("u^2"))
    assert exc.value.branch_value == "t"

    with pytest.raises(CoverCollisionError) as exc:
        pull_back(cubic_model, CoverSpec.parse("u^2 + u"))
    assert exc.value.branch_value == "inf"


def test_non_strict_pull_back_reports_direct_invariants(cubic_model):
    result = pull_back(cubic_model, CoverSpec.parse("u^2 + u"), strict=False)
    inv = result.invariants
    assert (inv.d, inv.delta, inv.bound) == (1, 5, 2)
    assert result.shortcut is None
    assert [r.branch.label() for r in result.collisions] == ["inf"]


def test_identity_cover_keeps_invariants(cubic_model):
    result = pull_back(cubic_model, CoverSpec.parse("u"))
    assert result.invariants == surface_invariants(cubic_model)
