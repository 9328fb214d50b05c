import cmath
import math

import numpy as np
import pytest

from analytic import (
    BettiCoords,
    EtaEvaluator,
    agm,
    align_frame,
    betti_coords,
    chart_coordinate,
    cubic_roots,
    elliptic_log,
    eta_P,
    lattice_distance,
    period_lattice,
    transport,
    weierstrass_p,
)
from mwgroup import SectionPoint, multiply
from surface.model import WeierstrassModel
from utils.errors import NearSingularFiberError, OffCurveError

LEMNISCATE_HALF = 2.6220575543
LEMNISCATE = 5.2441151086


def _on_curve(a, b, x, sign=1):
    return x, sign * cmath.sqrt(x ** 3 + a * x + b)


def test_agm_gauss_constant():
    assert complex(agm(1.0, math.sqrt(2.0))).real == pytest.approx(1.1981402347355922, abs=1e-14)


def test_cubic_roots_solve_the_cubic():
    a = np.array([-1.0, 0.3 - 1.1j, 2.0])
    b = np.array([0.0, 0.7 + 0.2j, -5.0])
    roots = cubic_roots(a, b)
    residual = roots ** 3 + a[:, None] * roots + b[:, None]
    assert np.max(np.abs(residual)) < 1e-12


def test_lemniscatic_lattice():
    basis = period_lattice(-1, 0)
    assert abs(basis.tau - 1j) < 1e-10
    assert basis.real_period() == pytest.approx(LEMNISCATE_HALF, abs=1e-9)
    assert basis.real_period(real_components=2) == pytest.approx(LEMNISCATE, abs=1e-9)


def test_j_zero_lattice_has_hexagonal_symmetry():
    tau = period_lattice(0, 1).tau
    assert abs(tau.imag - math.sqrt(3) / 2) < 1e-10
    assert abs(abs(tau.real) - 0.5) < 1e-10


def test_rescaling_shrinks_periods():
    base = period_lattice(-1, 1)
    scaled = period_lattice(-16, 64)
    assert abs(scaled.tau - base.tau) < 1e-10
    assert abs(scaled.omega2) == pytest.approx(abs(base.omega2) / 2, rel=1e-10)
    assert abs(scaled.omega1) == pytest.approx(abs(base.omega1) / 2, rel=1e-10)


def test_near_singular_fiber_is_rejected():
    with pytest.raises(NearSingularFiberError):
        period_lattice(-3, 2)


def test_elliptic_log_of_origin_and_two_torsion():
    basis = period_lattice(-1, 0)
    assert elliptic_log(-1, 0, None, basis) == 0j
    z = elliptic_log(-1, 0, (1.0, 0.0), basis)
    assert lattice_distance(2 * z, basis.omega1, basis.omega2) < 1e-8
    assert lattice_distance(z, basis.omega1, basis.omega2) > 0.1


def test_elliptic_log_rejects_off_curve_points():
    basis = period_lattice(-1, 0)
    with pytest.raises(OffCurveError):
        elliptic_log(-1, 0, (2.0, 3.0), basis)


@pytest.mark.parametrize("a, b", [(-1.0, 1.0), (0.3 - 1.1j, 0.7 + 0.2j), (-7.0, 6.0)])
def test_elliptic_log_round_trip_on_random_points(a, b):
    rng = np.random.default_rng(3)
    basis = period_lattice(a, b)
    for _ in range(50):
        x = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        x, y = _on_curve(a, b, x, rng.choice([-1, 1]))
        z = elliptic_log(a, b, (x, y), basis)
        p, half_dp = weierstrass_p(z, basis.omega1, basis.omega2)
        assert abs(complex(p) - x) <= 1e-8 * (1 + abs(x))
        assert abs(complex(half_dp) - y) <= 1e-8 * (1 + abs(y))


def test_elliptic_log_is_a_homomorphism():
    model = WeierstrassModel.parse("-1", "1")
    basis = period_lattice(-1, 1)
    p = SectionPoint.parse(model, "1", "1")
    q = SectionPoint.parse(model, "0", "1")

    def log_of(point):
        if point.is_zero:
            return 0j
        x = float(point.x.constant_value())
        y = float(point.y.constant_value())
        return elliptic_log(-1, 1, (x, y), basis)

    pairs = [(p, q), (p, p), (multiply(p, 2), q), (multiply(q, 2), multiply(p, -1)), (p, multiply(q, 3))]
    for u, v in pairs:
        diff = log_of(u + v) - log_of(u) - log_of(v)
        assert lattice_distance(diff, basis.omega1, basis.omega2) < 1e-8


def test_betti_coords_examples():
    assert betti_coords(0.5, 1j) == BettiCoords(0.0, 0.5)
    assert betti_coords(1j, 1j) == BettiCoords(0.0, 0.0)
    c = betti_coords(0.3j + 0.7, 1j)
    assert (c.r, c.s) == pytest.approx((0.3, 0.7), abs=1e-12)
    assert abs(c.reconstruct(1j) - (0.3j + 0.7)) < 1e-12
    with pytest.raises(ValueError):
        betti_coords(0.5, -1j)


def test_betti_coords_torus_distance_wraps():
    assert BettiCoords(0.99, 0.0).distance(BettiCoords(0.01, 0.0)) == pytest.approx(0.02)
    assert BettiCoords(0.25, 0.5).scaled(4) == BettiCoords(0.0, 0.0)


def test_chart_coordinate():
    assert chart_coordinate(2.0, "t") == 2.0
    assert chart_coordinate(None, "s") == 0j
    assert chart_coordinate(0.5, "s") == 2.0
    assert chart_coordinate(0, "s") is None


def test_align_frame_undoes_basis_change_and_branch_shift():
    basis = period_lattice(-1, 1)
    w1, w2 = basis.omega1, basis.omega2
    z = 0.3 * w1 + 0.6 * w2
    v1, v2, zz, ok = align_frame(w1, w2, z, -w2, w1, z + w1)
    assert bool(ok)
    assert abs(v1 - w1) < 1e-12 and abs(v2 - w2) < 1e-12
    assert abs(zz - z) < 1e-12


def test_eta_does_not_vanish_on_circle(cubic_model, cubic_point):
    for k in range(12):
        t0 = 2 * cmath.exp(2j * math.pi * (k + 0.5) / 12)
        sample = eta_P(cubic_model, cubic_point, t0)
        assert abs(sample.value) > 1e-6
        assert abs(sample.normalized - sample.value / sample.omega2) < 1e-15


def test_eta_is_linear_in_the_section(cubic_model, cubic_point):
    for t0 in (2 + 1j, -1.5 + 0.5j, 3 - 2j):
        base = eta_P(cubic_model, cubic_point, t0).value
        for n in (2, 3):
            value = eta_P(cubic_model, multiply(cubic_point, n), t0).value
            assert abs(value - n * base) <= 1e-5 * abs(n * base)


def test_eta_sample_at_a_singular_fiber_fails(cubic_model, cubic_point):
    with pytest.raises(NearSingularFiberError):
        eta_P(cubic_model, cubic_point, 0.0)


def test_eta_charts_agree_up_to_the_chart_change(cubic_model, cubic_point):
    t0 = 1.5 + 2j
    t_value = EtaEvaluator(cubic_model, cubic_point, "t").sample(t0).value
    s_value = EtaEvaluator(cubic_model, cubic_point, "s").sample(1 / t0).value
    # dt = -t^2 ds
    assert abs(s_value - (-(t0 ** 2)) * t_value) <= 1e-5 * abs(s_value)


def test_monodromy_around_multiplicative_fiber(cubic_model, cubic_point):
    result = transport(cubic_model, cubic_point, 6.75, 0.5)
    assert result.trace == 2
    assert not np.array_equal(result.monodromy, np.eye(2, dtype=int))
    assert round(np.linalg.det(result.monodromy)) == 1
    assert result.predicted_end().distance(result.end) < 1e-6


def test_monodromy_around_type_ii_fiber_has_order_six(cubic_model, cubic_point):
    result = transport(cubic_model, cubic_point, 0.0, 0.5)
    assert result.order() == 6
    assert result.trace == 1
    assert result.predicted_end().distance(result.end) < 1e-6


def test_transport_around_good_point_is_trivial(cubic_model, cubic_point):
    result = transport(cubic_model, cubic_point, 3.0, 0.5)
    assert np.array_equal(result.monodromy, np.eye(2, dtype=int))
    assert result.start.distance(result.end) < 1e-8
