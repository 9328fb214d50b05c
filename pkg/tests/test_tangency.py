from fractions import Fraction

import numpy as np
import pytest

import tangency.zeros as zero_scan
from analytic import BettiCoords
from exactalg import Place
from mwgroup import SectionPoint, multiply
from surface.cover import CoverSpec, pull_back, pull_back_point
from tangency import (
    TangencyRecord,
    classify_torsion_tangency,
    confirm_torsion_tangency,
    contour_winding,
    exclusion_radius,
    index_at_place,
    scan_chart,
    torsion_order_candidate,
    verify_sum_identity,
    winding_number,
)
from utils.errors import ContourRefinementError, TorsionPointError


def _circle(n=64, radius=1.0):
    return radius * np.exp(2j * np.pi * np.arange(n) / n)


def test_winding_number_examples():
    z = _circle()
    assert winding_number(z ** 2).index == 2
    assert winding_number(np.conj(z)).index == -1
    assert winding_number(z ** 2 + 0.1 * z ** 3).index == 2
    assert winding_number(np.ones(16, dtype=complex)).index == 0


def test_winding_is_additive_over_random_roots():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 100:
        roots = rng.uniform(-2, 2, 2) + 1j * rng.uniform(-2, 2, 2)
        if np.any(np.abs(np.abs(roots) - 1.0) < 0.2):
            continue
        a, b = roots
        w_a = contour_winding(lambda z: z - a, 0j, 1.0, samples=256).index
        w_b = contour_winding(lambda z: z - b, 0j, 1.0, samples=256).index
        w_ab = contour_winding(lambda z: (z - a) * (z - b), 0j, 1.0, samples=256).index
        assert w_ab == w_a + w_b
        assert w_ab == int(np.sum(np.abs(roots) < 1.0))
        checked += 1


def test_dog_on_a_leash():
    z = _circle(128)
    walker = z ** 3
    dog = z ** 3 + 0.5 * z + 0.3
    assert np.all(np.abs(dog - walker) < np.abs(walker))
    assert winding_number(dog).index == winding_number(walker).index == 3


def test_contour_winding_refines_coarse_samples():
    result = contour_winding(lambda z: z ** 7, 0j, 1.0, samples=16)
    assert result.index == 7
    assert result.samples > 16


def test_unresolvable_samples_raise():
    with pytest.raises(ContourRefinementError):
        winding_number([1, -1, 1j])
    with pytest.raises(ContourRefinementError):
        winding_number([1, 0, 1j, -1j])
    with pytest.raises(ContourRefinementError):
        winding_number([1, np.nan, 1j])
    with pytest.raises(ContourRefinementError) as exc:
        contour_winding(lambda z: z - 1.0, 0j, 1.0, samples=16)
    assert exc.value.context["minimum"] == 0.0


def test_exclusion_radius():
    assert exclusion_radius([0, 6.75]) == 0.5
    assert exclusion_radius([0, 0.4]) == pytest.approx(0.1)
    assert exclusion_radius([3.0]) == 0.5


def test_torsion_order_candidate_examples():
    n, residual = torsion_order_candidate(BettiCoords(0.5000000001, 0.4999999998), 12)
    assert n == 2
    assert residual < 1e-9
    assert torsion_order_candidate(BettiCoords(1 / 3, 2 / 3), 12)[0] == 3
    assert torsion_order_candidate(BettiCoords(0.1234567, 0.7654321), 12) is None
    assert torsion_order_candidate(BettiCoords(0.25, 0.0), 3) is None


def test_index_at_multiplicative_place(cubic_model, cubic_point):
    assert index_at_place(cubic_model, cubic_point, Place.at(Fraction(27, 4))) == {"t - 27/4": -1}
    assert index_at_place(cubic_model, cubic_point, Place.at(0)) == {"t": -1}


def test_index_at_infinity_uses_minimal_frame(cubic_model, cubic_point):
    assert index_at_place(cubic_model, cubic_point, Place.infinity()) == {"inf": -1}


def test_sum_identity_on_cubic_surface(cubic_model, cubic_point):
    report = verify_sum_identity(cubic_model, cubic_point)
    assert report.expected == -3
    assert report.total == -3
    assert report.zeros == []
    assert report.bad_place_indices == {"t": -1, "t - 27/4": -1, "inf": -1}
    assert report.complete and report.passed
    assert report.t_betti == 0 and report.bound_holds


def test_sum_identity_for_a_multiple(cubic_point):
    report = verify_sum_identity(cubic_point.model, multiply(cubic_point, 2))
    assert report.total == -3
    assert report.passed
    for si in report.special:
        if si.expected is not None:
            assert si.J == si.expected


def test_sum_identity_after_base_change(pulled_cubic):
    model, point = pulled_cubic
    report = verify_sum_identity(model, point)
    assert report.expected == -4
    assert report.total == -4
    assert report.passed
    assert sorted(report.bad_place_indices.values()).count(-1) == 6
    assert report.bad_place_indices["inf"] == 1
    assert len(report.zeros) == 1
    zero = report.zeros[0]
    assert abs(zero.t0) < 1e-4
    assert zero.J == 1 and zero.I == 2
    assert report.t_betti == 2
    assert report.bound_holds


def test_sum_identity_rejects_torsion_sections(isotrivial_model):
    p = SectionPoint.parse(isotrivial_model, "0", "0")
    with pytest.raises(TorsionPointError) as exc:
        verify_sum_identity(isotrivial_model, p)
    assert exc.value.order == 2
    assert exc.value.exit_code == 1


def test_sum_identity_on_twisted_surface(twist_model, twist_point):
    report = verify_sum_identity(twist_model, twist_point)
    assert report.expected == -4
    assert report.total == -4
    assert report.zeros == []
    assert report.passed


class _RationalForm:
    """Stand-in evaluator: a simple pole at 0 times ``prod (z - root)``."""

    chart = "t"

    def __init__(self, *roots):
        self.roots = roots

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = 1 / z
        for root in self.roots:
            out = out * (z - root)
        return out

    def evaluate(self, z):
        c = self(z)
        flat = np.zeros(c.shape)
        return c, flat, flat, flat, flat


def test_scan_does_not_seed_newton_at_special_points(monkeypatch):
    seeds = []
    real = zero_scan.newton_zero

    def spy(evaluator, seed, *args, **kwargs):
        seeds.append(seed)
        return real(evaluator, seed, *args, **kwargs)

    monkeypatch.setattr(zero_scan, "newton_zero", spy)
    scan = scan_chart(_RationalForm(1.5), 3.0, np.array([0j]), 0.2, 3.0, grid=24)
    assert seeds
    assert all(abs(seed) > 0.2 for seed in seeds)
    assert scan.unresolved == []
    assert len(scan.zeros) == 1
    assert abs(scan.zeros[0].t0 - 1.5) < 1e-4
    assert scan.zeros[0].J == 1


def test_failed_seeds_next_to_a_special_point_are_not_unresolved(monkeypatch):
    monkeypatch.setattr(zero_scan, "newton_zero", lambda *args, **kwargs: None)
    scan = scan_chart(_RationalForm(0.5, 1.5), 3.0, np.array([0j]), 0.2, 3.0, grid=24)
    assert len(scan.near_special) == 1
    assert abs(scan.near_special[0] - 0.5) < 0.3
    assert len(scan.unresolved) == 1
    assert abs(scan.unresolved[0] - 1.5) < 0.3
    assert scan.zeros == []


@pytest.fixture
def torsion_cover(cubic_model, cubic_point):
    """``t = (u^2 + 3u + 3)/u`` is branched where ``3P`` meets the zero section."""
    cover = CoverSpec.parse("(u^2 + 3*u + 3)/u")
    model = pull_back(cubic_model, cover).model
    return model, pull_back_point(cubic_point, cover, model)


def test_confirm_torsion_tangency_at_a_ramified_crossing(torsion_cover):
    _, point = torsion_cover
    root = 3 ** 0.5
    assert confirm_torsion_tangency(point, 3, root)
    assert confirm_torsion_tangency(point, 3, -root)
    assert not confirm_torsion_tangency(point, 3, 2.0)
    assert not confirm_torsion_tangency(point, 1, root)


def test_classify_torsion_tangency_attaches_the_order(torsion_cover):
    model, point = torsion_cover
    rec = TangencyRecord(complex(3 ** 0.5), 1, BettiCoords(1 / 3, 2 / 3))
    classified = classify_torsion_tangency(rec, model, point, 12)
    assert classified.torsion_candidate[0] == 3
    assert classified.torsion_confirmed is True
    assert classified.as_dict()["torsion_candidate"]["n"] == 3

    plain = TangencyRecord(2.0 + 0j, 1, BettiCoords(0.1234567, 0.7654321))
    assert classify_torsion_tangency(plain, model, point, 12).torsion_candidate is None


def test_sum_identity_for_a_multiple_after_base_change(pulled_cubic):
    model, point = pulled_cubic
    report = verify_sum_identity(model, multiply(point, 2))
    assert report.expected == -4
    assert report.total == -4
    assert report.passed
    assert len(report.zeros) == 1
    assert abs(report.zeros[0].t0) < 1e-4
    assert report.zeros[0].J == 1
