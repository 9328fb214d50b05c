import json
import logging

import pytest
from pydantic import ValidationError

from config import BettiConstants, Settings, apply_settings, get_settings, settings
from utils import logging_helper
from utils.errors import BettiError, NoConvergenceError
from utils.logging_helper import CorrelationIdFilter, correlation_id_var, setup_logging
from utils.steps import StepError, record_check, run_step


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "values.json"
    path.write_text(json.dumps({"grid": 96, "n_max": 8, "precision": 1e-10}), encoding="utf-8")
    return path


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("BETTI_GRID", "BETTI_N_MAX", "BETTI_PRECISION"):
        monkeypatch.delenv(name, raising=False)
    for name in Settings.model_fields:
        monkeypatch.setattr(settings, name, getattr(settings, name))
    yield


def test_settings_defaults_come_from_constants(tmp_path):
    config = get_settings(tmp_path / "absent.json")
    assert config.grid == BettiConstants.DEFAULT_GRID
    assert config.n_max == BettiConstants.DEFAULT_N_MAX
    assert config.precision == BettiConstants.DEFAULT_PRECISION


def test_settings_precedence(config_file, monkeypatch):
    assert get_settings(config_file).grid == 96
    monkeypatch.setenv("BETTI_GRID", "128")
    config = get_settings(config_file)
    assert config.grid == 128
    assert config.n_max == 8
    config = get_settings(config_file, grid=40, n_max=None)
    assert config.grid == 40
    assert config.n_max == 8


def test_invalid_settings_are_rejected(config_file):
    with pytest.raises(ValidationError):
        get_settings(config_file, grid=4)
    with pytest.raises(ValidationError):
        get_settings(config_file, precision=-1.0)
    with pytest.raises(ValidationError):
        Settings(winding_residual_limit=0.7)


def test_unreadable_config_file_is_ignored(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("[1, 2", encoding="utf-8")
    assert get_settings(path).grid == BettiConstants.DEFAULT_GRID


def test_apply_settings_updates_shared_instance(config_file):
    applied = apply_settings(get_settings(config_file))
    assert applied is settings
    assert settings.grid == 96
    assert settings.precision == 1e-10


def test_setup_logging_sets_correlation_id():
    cid = setup_logging(logging.DEBUG)
    assert correlation_id_var.get() == cid
    root = logging.getLogger()
    assert root.level == logging.DEBUG
    assert all(any(isinstance(f, CorrelationIdFilter) for f in h.filters) for h in root.handlers)

    record = logging.LogRecord("betti", logging.INFO, __file__, 1, "msg", None, None)
    assert CorrelationIdFilter().filter(record)
    assert record.correlation_id == cid


def test_record_check_updates_counters(monkeypatch):
    monkeypatch.setattr(logging_helper, "check_counts", {"passed": 0, "failed": 0})
    assert record_check("sum identity", True, "total -3 expected -3")
    assert not record_check("height bound", False)
    assert logging_helper.check_counts == {"passed": 1, "failed": 1}


def test_run_step_wraps_unexpected_errors():
    def broken():
        raise ValueError("bad value")

    with pytest.raises(StepError) as exc:
        run_step("broken", broken)
    assert exc.value.step == "broken"
    assert isinstance(exc.value.original_error, ValueError)
    assert exc.value.exit_code == 2


def test_run_step_passes_betti_errors_through():
    def diverges():
        raise NoConvergenceError("complex AGM", 64, 0.5)

    with pytest.raises(NoConvergenceError) as exc:
        run_step("periods", diverges)
    assert isinstance(exc.value, BettiError)
    assert exc.value.exit_code == 2


def test_run_step_returns_result():
    assert run_step("sum", sum, [1, 2, 3]) == 6


def test_metrics_server_needs_a_port(monkeypatch):
    monkeypatch.delenv("PROMETHEUS_PORT", raising=False)
    assert not logging_helper.start_metrics_server()
