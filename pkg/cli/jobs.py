"""Job descriptions read from JSON."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, field_validator

from config import settings
from exactalg import Place
from mwgroup.points import SectionPoint
from surface.cover import CoverSpec, PullBackResult, pull_back, pull_back_point
from surface.model import WeierstrassModel
from utils.errors import JobSpecError

logger = logging.getLogger(__name__)


class Analysis(str, Enum):
    CLASSIFY = "classify"
    INVARIANTS = "invariants"
    BOUND = "bound"
    HEIGHTS = "heights"
    TANGENCIES = "tangencies"
    VERIFY_ALL = "verify-all"


class ModelSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    A: str
    B: str


class PointSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    x: str
    y: str


class CoverJob(BaseModel):
    model_config = ConfigDict(extra="forbid")

    map: str
    #: refuse covers branched over bad places
    strict: bool = True


class NumericSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    #: unset fields fall back to the applied settings
    precision: float = Field(default_factory=lambda: settings.precision)
    grid: int = Field(default_factory=lambda: settings.grid)
    #: scan radius in the base variable; derived from the special points when absent
    region: Optional[float] = None
    n_max: int = Field(default_factory=lambda: settings.n_max)
    n_steps: int = 4

    @field_validator("precision")
    @classmethod
    def _positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("precision must be positive")
        return v

    @field_validator("grid")
    @classmethod
    def _grid(cls, v: int) -> int:
        if v < 8:
            raise ValueError("grid must be at least 8")
        return v

    @field_validator("n_max", "n_steps")
    @classmethod
    def _counts(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v


@dataclass(frozen=True)
class ResolvedJob:
    """Exact objects built from a job: the analysed surface and section."""

    base_model: WeierstrassModel
    model: WeierstrassModel
    point: Optional[SectionPoint]
    cover: Optional[CoverSpec]
    s_places: List[Place]
    pullback: Optional[PullBackResult] = None


class JobSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    model: ModelSpec
    point: Optional[PointSpec] = None
    cover: Optional[CoverJob] = None
    S: List[str] = Field(default_factory=list)
    analysis: Analysis = Analysis.VERIFY_ALL
    numeric: NumericSpec = Field(default_factory=NumericSpec)
    base_genus: int = 0

    _resolved: Optional[ResolvedJob] = PrivateAttr(default=None)

    def resolve(self) -> ResolvedJob:
        """Parse every expression; errors carry their position."""
        if self._resolved is not None:
            return self._resolved
        base = WeierstrassModel.parse(self.model.A, self.model.B, "t")
        point = SectionPoint.parse(base, self.point.x, self.point.y) if self.point else None
        cover = None
        pullback = None
        model = base
        if self.cover is not None:
            cover = CoverSpec.parse(self.cover.map, "u")
            pullback = pull_back(base, cover, strict=self.cover.strict)
            model = pullback.model
            point = pull_back_point(point, cover, model) if point is not None else None
        places = [Place.parse(text, model.variable) for text in self.S]
        self._resolved = ResolvedJob(base, model, point, cover, places, pullback)
        return self._resolved


def _decode_error(exc: json.JSONDecodeError) -> JobSpecError:
    return JobSpecError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno)


def parse_job(text: Union[bytes, str]) -> JobSpec:
    """Validate a UTF-8 JSON job and parse all expressions it contains."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise JobSpecError(f"job is not UTF-8: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _decode_error(exc) from exc
    try:
        job = JobSpec.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "job"
        raise JobSpecError(f"{where}: {first['msg']}") from exc
    job.resolve()
    logger.debug(f"parsed job: analysis={job.analysis.value} cover={job.cover is not None}")
    return job
