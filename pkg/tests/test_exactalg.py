import cmath
import random
from fractions import Fraction

import pytest

from exactalg import (
    Place,
    Poly,
    RatFunc,
    complex_roots,
    factor_squarefree_rational,
    parse_polynomial,
    parse_ratfunc,
    places_of,
    principal_divisor_degree,
    ratfunc_arith,
    reduce_at,
    valuation,
)
from utils.errors import ExpressionParseError, PlaceError, RatFuncZeroDivisionError

t = RatFunc.gen()


def test_ratfunc_arith_basic_examples():
    assert ratfunc_arith(t, t, "+") == 2 * t
    assert ratfunc_arith(1 / t, t, "×") == RatFunc(1)
    reduced = parse_ratfunc("(t^2 - 1)/(t - 1)")
    assert reduced == t + 1
    assert ratfunc_arith(reduced, 1, "+") == t + 2


def test_ratfunc_is_canonical():
    f = RatFunc(Poly([2, 2]), Poly([4, 0, 4]))
    assert f.den.leading_coefficient == 1
    assert f == parse_ratfunc("(t + 1)/(2*t^2 + 2)")
    assert hash(f) == hash(parse_ratfunc("(2*t + 2)/(4*t^2 + 4)"))


def test_ratfunc_division_by_zero():
    with pytest.raises(RatFuncZeroDivisionError):
        ratfunc_arith(t, 0, "/")


def test_ratfunc_randomized_field_axioms():
    rng = random.Random(7)

    def rand_func():
        num = Poly([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))])
        den = Poly([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))])
        if den.is_zero():
            den = Poly([1])
        return RatFunc(num, den)

    for _ in range(40):
        a, b, c = rand_func(), rand_func(), rand_func()
        assert (a + b) * c == a * c + b * c
        assert a - a == RatFunc(0)
        if not b.is_zero():
            assert (a / b) * b == a


def test_compose_and_evaluate():
    f = parse_ratfunc("(2*t^2 + 1)/(t^2 + 1)")
    g = parse_ratfunc("t + 1")
    assert f.compose(g) == parse_ratfunc("(2*(t+1)^2 + 1)/((t+1)^2 + 1)")
    assert f(Fraction(1)) == Fraction(3, 2)
    assert abs(f(1j + 0.5) - (2 * (0.5 + 1j) ** 2 + 1) / ((0.5 + 1j) ** 2 + 1)) < 1e-12
    assert f.value_at_infinity() == 2


def test_valuation_examples():
    assert valuation(parse_ratfunc("t^2*(27 - 4*t)"), Place.at(0)) == 2
    assert valuation(t, Place.infinity()) == -1
    assert valuation(parse_ratfunc("(t - 1)/(t + 1)"), Place.at(1)) == 1
    assert valuation(parse_ratfunc("(t - 1)/(t + 1)"), Place.at(-1)) == -1


def test_valuation_of_zero_is_an_error():
    with pytest.raises(PlaceError):
        valuation(RatFunc(0), Place.at(0))


def test_principal_divisor_has_degree_zero():
    for text in ("t^2*(27 - 4*t)", "(t^2 + 1)/(t^3 - 2)", "5", "(t - 1)^3/t"):
        assert principal_divisor_degree(parse_ratfunc(text)) == 0


def test_factor_squarefree_rational_examples():
    lead, factors = factor_squarefree_rational(parse_polynomial("-4*t^3 + 27*t^2"))
    assert lead == -4
    assert dict(factors) == {Poly([0, 1]): 2, Poly([Fraction(-27, 4), 1]): 1}

    _, factors = factor_squarefree_rational(parse_polynomial("t^2 + 1"))
    assert factors == [(Poly([1, 0, 1]), 1)]

    _, factors = factor_squarefree_rational(parse_polynomial("(t - 1)^2*(t + 2)"))
    assert sorted(factors, key=lambda pm: pm[1]) == [(Poly([2, 1]), 1), (Poly([-1, 1]), 2)]


def test_place_parse_and_normalisation():
    assert Place.parse("inf").is_infinite
    assert Place.parse("∞") == Place.infinity()
    p = Place.parse("2*t^2 + 2")
    assert p.poly == Poly([1, 0, 1])
    assert p.degree == 2
    assert p.label() == "t^2 + 1"
    with pytest.raises(PlaceError):
        Place.parse("t^2 - 1")


def test_places_of_lists_finite_factors_then_infinity():
    places = places_of(parse_ratfunc("t^2*(27 - 4*t)"))
    assert places[-1].is_infinite
    assert sorted(p.rational_point() for p in places[:-1]) == [Fraction(0), Fraction(27, 4)]


def test_reduce_at_degree_one_and_two():
    f = parse_ratfunc("(t^2 + 3)/(t + 1)")
    assert reduce_at(f, Place.at(1)) == Poly([2])
    residue = reduce_at(parse_ratfunc("t^3"), Place.parse("t^2 + 1"))
    assert residue == Poly([0, -1])


def test_complex_roots_examples():
    roots = complex_roots(parse_polynomial("t^2 - 2"))
    assert sorted(r.real for r in roots) == pytest.approx([-2 ** 0.5, 2 ** 0.5], abs=1e-12)

    roots = complex_roots(parse_polynomial("t^2*(27 - 4*t)"))
    assert [r.real for r in roots] == pytest.approx([0.0, 0.0, 6.75], abs=1e-12)

    roots = complex_roots(parse_polynomial("t^3 - 1"))
    expected = [cmath.exp(2j * cmath.pi * k / 3) for k in range(3)]
    for e in expected:
        assert min(abs(r - e) for r in roots) < 1e-12


def test_complex_roots_rejects_constants():
    with pytest.raises(ValueError):
        complex_roots(Poly([3]))


def test_expression_errors_carry_position():
    with pytest.raises(ExpressionParseError) as exc:
        parse_ratfunc("t^2 + * 3")
    assert exc.value.line == 1
    assert exc.value.column == 7

    with pytest.raises(ExpressionParseError) as exc:
        parse_ratfunc("t + x")
    assert "unknown variable" in exc.value.reason

    with pytest.raises(ExpressionParseError):
        parse_ratfunc("1/(t - t)")


def test_expression_accepts_aliases_and_implicit_products():
    assert parse_ratfunc("2t**2 − 3") == parse_ratfunc("2*t^2 - 3")
    assert parse_ratfunc("u^2 + u", "u") == parse_ratfunc("t^2 + t")


def test_expression_structure_errors():
    with pytest.raises(ExpressionParseError) as exc:
        parse_ratfunc("t^(1/2)")
    assert "exponent" in exc.value.reason
    assert exc.value.column == 2

    with pytest.raises(ExpressionParseError) as exc:
        parse_ratfunc("(t + 1")
    assert exc.value.reason == "missing closing parenthesis"

    with pytest.raises(ExpressionParseError) as exc:
        parse_ratfunc("t + 1)")
    assert exc.value.column == 6

    with pytest.raises(ExpressionParseError) as exc:
        parse_ratfunc("   ")
    assert exc.value.reason == "empty expression"


def test_expression_powers_and_division():
    assert parse_ratfunc("t^-2") == 1 / parse_ratfunc("t^2")
    assert parse_ratfunc("(t^2 - 1)/(2*t - 2)") == parse_ratfunc("(t + 1)/2")
    assert parse_ratfunc("-t^2") == -(t ** 2)
    assert parse_ratfunc("2^3^2") == RatFunc(512)


def test_to_integral_clears_denominators():
    m, scaled = Poly([Fraction(1, 4), Fraction(1, 6)]).to_integral()
    assert m == 12
    assert scaled == Poly([3, 2])
