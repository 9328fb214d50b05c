from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, field_validator

logger = logging.getLogger(__name__)


# Load environment variables from a .env file if present.
load_dotenv()


class BettiConstants:
    """Default numerical values used across the analysis pipeline."""

    #: Target absolute accuracy for periods, logarithms and roots
    DEFAULT_PRECISION = 1e-12

    #: Number of grid points per axis when scanning for zeros of eta
    DEFAULT_GRID = 256

    #: Largest multiple tried by torsion and tangency order searches
    DEFAULT_N_MAX = 12

    #: Base step of the central differences used for d/dt
    FD_STEP = 1e-5

    #: A winding number whose distance from an integer exceeds this is rejected
    WINDING_RESIDUAL_LIMIT = 0.1

    #: Largest argument jump between consecutive contour samples
    MAX_ARG_JUMP = 1.5707963267948966

    #: Samples placed on a contour before adaptive refinement
    CONTOUR_SAMPLES = 64

    #: Number of halvings allowed on a single contour segment
    MAX_CONTOUR_REFINEMENTS = 12

    #: Newton iterations before a seed is reported as unresolved
    NEWTON_MAX_STEPS = 40

    #: |eta| relative to the median below which a Newton result is a zero
    ZERO_THRESHOLD = 1e-6

    #: Zeros closer than this fraction of the scan diameter are merged
    DEDUP_FACTOR = 1e-4

    #: Largest lattice drift, as a fraction of the shortest period, between
    #: neighbouring evaluations before continuation is refused
    BRANCH_CONTINUITY = 0.25

    #: Points per vectorised evaluation batch
    EVAL_CHUNK = 4096

    #: Decimal places kept for floats in reports
    REPORT_DECIMALS = 10

    #: Relative |Delta| below which a fiber is treated as singular
    NEAR_SINGULAR = 1e-10


class Settings(BaseSettings):
    """Numerical configuration loaded from ``BETTI_*`` environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="BETTI_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    precision: float = Field(BettiConstants.DEFAULT_PRECISION)
    grid: int = Field(BettiConstants.DEFAULT_GRID)
    n_max: int = Field(BettiConstants.DEFAULT_N_MAX)
    fd_step: float = Field(BettiConstants.FD_STEP)
    winding_residual_limit: float = Field(BettiConstants.WINDING_RESIDUAL_LIMIT)
    contour_samples: int = Field(BettiConstants.CONTOUR_SAMPLES)
    max_contour_refinements: int = Field(BettiConstants.MAX_CONTOUR_REFINEMENTS)
    newton_max_steps: int = Field(BettiConstants.NEWTON_MAX_STEPS)
    zero_threshold: float = Field(BettiConstants.ZERO_THRESHOLD)
    eval_chunk: int = Field(BettiConstants.EVAL_CHUNK)
    report_decimals: int = Field(BettiConstants.REPORT_DECIMALS)
    show_progress: bool = Field(True)

    @field_validator("precision", "fd_step", "zero_threshold")
    @classmethod
    def _check_positive_float(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("value must be positive")
        return v

    @field_validator(
        "grid",
        "n_max",
        "contour_samples",
        "max_contour_refinements",
        "newton_max_steps",
        "eval_chunk",
    )
    @classmethod
    def _check_positive_int(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("value must be positive")
        return v

    @field_validator("grid")
    @classmethod
    def _check_grid(cls, v: int) -> int:
        if v < 8:
            raise ValueError("BETTI_GRID must be at least 8")
        return v

    @field_validator("winding_residual_limit")
    @classmethod
    def _check_residual(cls, v: float) -> float:
        if not 0 < v < 0.5:
            raise ValueError("BETTI_WINDING_RESIDUAL_LIMIT must lie in (0, 0.5)")
        return v

    @field_validator("report_decimals")
    @classmethod
    def _check_decimals(cls, v: int) -> int:
        if not 1 <= v <= 15:
            raise ValueError("BETTI_REPORT_DECIMALS must lie in [1, 15]")
        return v


# Instantiate once at import time
settings = Settings()


class ConfigurationManager:
    """Merge a JSON numeric config file with ``BETTI_*`` environment variables.

    Values from the environment win over the file, and keyword overrides
    (typically CLI flags) win over both.
    """

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = config_path or Path(__file__).with_name("values.json")
        self._settings: Optional[Settings] = None

    def load_settings(self, **overrides: Any) -> Settings:
        if self._settings is None or overrides:
            file_config = self._load_file_config()
            env_vars = self._load_environment_variables()
            merged_config = {**file_config, **env_vars}
            merged_config.update({k: v for k, v in overrides.items() if v is not None})
            self._settings = Settings(**merged_config)
        return self._settings

    def _load_environment_variables(self) -> Dict[str, Any]:
        prefix = "BETTI_"
        return {
            k[len(prefix):].lower(): v
            for k, v in os.environ.items()
            if k.upper().startswith(prefix)
        }

    def _load_file_config(self) -> Dict[str, Any]:
        if not self.config_path.exists():
            return {}
        try:
            with open(self.config_path, encoding="utf-8") as fh:
                data = json.load(fh)
        except Exception as exc:
            logger.error(f"Failed to load config file {self.config_path}: {exc}")
            return {}
        if not isinstance(data, dict):
            logger.error(f"Config file {self.config_path} must hold a JSON object")
            return {}
        return {str(k).lower(): v for k, v in data.items()}


def get_settings(config_path: Optional[Path] = None, **overrides: Any) -> Settings:
    """Return settings merged from the config file, environment and overrides."""
    manager = ConfigurationManager(config_path)
    return manager.load_settings(**overrides)


def apply_settings(new: Settings) -> Settings:
    """Copy ``new`` into the shared ``settings`` instance read by the library."""
    for name in Settings.model_fields:
        setattr(settings, name, getattr(new, name))
    return settings
