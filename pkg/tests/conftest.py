"""Shared fixtures: the worked surfaces and a fast numerical configuration."""

import pytest

from config import settings
from mwgroup.points import SectionPoint
from surface.cover import CoverSpec, pull_back, pull_back_point
from surface.model import WeierstrassModel

#: grid used by the numerical scans in tests
TEST_GRID = 48


@pytest.fixture(autouse=True)
def _quiet_settings(monkeypatch):
    """Small grids and no progress bars; restored after every test."""
    monkeypatch.setattr(settings, "show_progress", False)
    monkeypatch.setattr(settings, "grid", TEST_GRID)
    yield


@pytest.fixture
def cubic_model():
    """``y^2 = x^3 - t x + t``: II at 0, I1 at 27/4, III* at infinity."""
    return WeierstrassModel.parse("-t", "t")


@pytest.fixture
def cubic_point(cubic_model):
    return SectionPoint.parse(cubic_model, "1", "1")


@pytest.fixture
def twist_model():
    """Quadratic twist by ``f = t^3 - t + 1`` of ``y^2 = x^3 - x + 1``."""
    return WeierstrassModel.parse("-(t^3 - t + 1)^2", "(t^3 - t + 1)^3")


@pytest.fixture
def twist_point(twist_model):
    return SectionPoint.parse(twist_model, "t*(t^3 - t + 1)", "(t^3 - t + 1)^2")


@pytest.fixture
def isotrivial_model():
    """``y^2 = x^3 - t^2 x``: I0* at 0 and infinity."""
    return WeierstrassModel.parse("-t^2", "0")


@pytest.fixture
def product_model():
    """``j = 1728 t^2/(t^2 - 1)`` with ``d = 2`` and ``delta = 3``."""
    return WeierstrassModel.parse("-3*t^4*(t^2 - 1)^2", "2*t^5*(t^2 - 1)^3")


@pytest.fixture
def legendre_model():
    """``y^2 = x (x - 1)(x - t)`` in short form: I2, I2, I2*."""
    return WeierstrassModel.parse("-(t^2 - t + 1)/3", "-(t + 1)*(t - 2)*(2*t - 1)/27")


@pytest.fixture
def even_cover():
    """Degree two cover branched over the good places ``t = 1`` and ``t = 2``."""
    return CoverSpec.parse("(2*u^2 + 1)/(u^2 + 1)")


@pytest.fixture
def pulled_cubic(cubic_model, cubic_point, even_cover):
    result = pull_back(cubic_model, even_cover)
    return result.model, pull_back_point(cubic_point, even_cover, result.model)
