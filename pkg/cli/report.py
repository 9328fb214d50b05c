"""JSON reports and CSV plot sidecars."""

from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from config import settings
from surface.invariants import SurfaceInvariants, degenerate_flag, degenerate_message
from surface.minimal import FiberData

logger = logging.getLogger(__name__)

PLOT_COLUMNS = ["re_t", "im_t", "abs_eta", "r", "s"]


def rounded(value: Optional[float], decimals: Optional[int] = None) -> Optional[float]:
    if value is None:
        return None
    out = round(float(value), decimals if decimals is not None else settings.report_decimals)
    return 0.0 if out == 0 else out


def _complex_pair(z: Optional[complex]) -> Optional[List[float]]:
    if z is None:
        return None
    return [rounded(z.real), rounded(z.imag)]


class InvariantsOut(BaseModel):
    g: int
    d: int
    delta: int
    bound: int
    c1bar_sq: int
    c2bar: int
    degenerate: bool
    message: Optional[str] = None
    semistable_hypothesis: Optional[bool] = None
    semistable_conclusion: Optional[bool] = None

    @classmethod
    def build(cls, inv: SurfaceInvariants, semistable=None) -> "InvariantsOut":
        return cls(
            g=inv.g,
            d=inv.d,
            delta=inv.delta,
            bound=inv.bound,
            c1bar_sq=inv.c1bar_sq,
            c2bar=inv.c2bar,
            degenerate=degenerate_flag(inv),
            message=degenerate_message(inv),
            semistable_hypothesis=None if semistable is None else semistable.hypothesis,
            semistable_conclusion=None if semistable is None else semistable.conclusion,
        )


class FiberOut(BaseModel):
    place: str
    degree: int
    kodaira: str
    ord_a: Optional[int]
    ord_b: Optional[int]
    ord_delta: int
    u_order: int
    components: int
    group_order: int

    @classmethod
    def build(cls, f: FiberData, variable: str) -> "FiberOut":
        return cls(
            place=f.place.label(variable),
            degree=f.degree,
            kodaira=str(f.kodaira_type),
            ord_a=f.ord_a_min,
            ord_b=f.ord_b_min,
            ord_delta=f.ord_delta_min,
            u_order=f.u_order,
            components=f.component_count,
            group_order=f.component_group_order,
        )


class CoverOut(BaseModel):
    map: str
    degree: int
    genus: int
    branch_places: List[str]
    collisions: List[str]
    base_invariants: InvariantsOut


class HeightOut(BaseModel):
    naive_height: int
    canonical_exact: Optional[str]
    canonical_exact_value: Optional[float]
    canonical_limit: float
    canonical_limit_error: float
    po_intersection: int
    bound_rhs: int
    t_size: int
    is_s_integral: bool
    holds: bool
    equality: bool
    poles_outside_s: List[str] = Field(default_factory=list)

    @classmethod
    def build(cls, h) -> "HeightOut":
        exact: Optional[Fraction] = h.canonical_exact
        return cls(
            naive_height=h.naive_height,
            canonical_exact=None if exact is None else str(exact),
            canonical_exact_value=None if exact is None else rounded(exact),
            canonical_limit=rounded(h.canonical_limit),
            canonical_limit_error=rounded(h.canonical_limit_error),
            po_intersection=h.po_intersection,
            bound_rhs=h.bound_rhs,
            t_size=h.t_size,
            is_s_integral=h.is_s_integral,
            holds=h.holds,
            equality=h.equality,
            poles_outside_s=list(h.poles_outside_s),
        )


class TorsionOut(BaseModel):
    n: int
    residual: float
    confirmed: Optional[bool] = None


class TangencyOut(BaseModel):
    t0: Optional[List[float]]
    J: int
    I: int  # noqa: E741
    r: Optional[float] = None
    s: Optional[float] = None
    torsion_candidate: Optional[TorsionOut] = None

    @classmethod
    def build(cls, rec) -> "TangencyOut":
        torsion = None
        if rec.torsion_candidate is not None:
            n, residual = rec.torsion_candidate
            torsion = TorsionOut(n=n, residual=rounded(residual), confirmed=rec.torsion_confirmed)
        return cls(
            t0=_complex_pair(rec.t0),
            J=rec.J,
            I=rec.I,
            r=None if rec.betti is None else rounded(rec.betti.r),
            s=None if rec.betti is None else rounded(rec.betti.s),
            torsion_candidate=torsion,
        )


class SpecialOut(BaseModel):
    label: str
    kodaira: str
    bad: bool
    J: int
    expected: Optional[int]
    winding: int
    u_order: int
    radius: float


class SumIdentityOut(BaseModel):
    zeros: List[TangencyOut]
    bad_place_indices: Dict[str, int]
    special: List[SpecialOut]
    total: int
    expected: int
    bound: int
    passed: bool
    t_betti: int
    bound_holds: bool
    complete: bool
    unresolved: List[List[float]] = Field(default_factory=list)
    argument_principle: Optional[Dict[str, Union[bool, int, None]]] = None

    @classmethod
    def build(cls, rep) -> "SumIdentityOut":
        return cls(
            zeros=[TangencyOut.build(z) for z in rep.zeros],
            bad_place_indices=dict(rep.bad_place_indices),
            special=[
                SpecialOut(
                    label=si.label,
                    kodaira=si.kodaira,
                    bad=si.is_bad,
                    J=si.J,
                    expected=si.expected,
                    winding=si.winding,
                    u_order=si.u_order,
                    radius=rounded(si.radius),
                )
                for si in rep.special
            ],
            total=rep.total,
            expected=rep.expected,
            bound=rep.bound,
            passed=rep.passed,
            t_betti=rep.t_betti,
            bound_holds=rep.bound_holds,
            complete=rep.complete,
            unresolved=[_complex_pair(z) for z in rep.unresolved],
            argument_principle=rep.argument_principle,
        )


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid")

    analysis: str
    model: Dict[str, str]
    variable: str = "t"
    invariants: Optional[InvariantsOut] = None
    fibers: List[FiberOut] = Field(default_factory=list)
    cover: Optional[CoverOut] = None
    height: Optional[HeightOut] = None
    sum_identity: Optional[SumIdentityOut] = None
    warnings: List[str] = Field(default_factory=list)
    passed: bool = True
    exit_code: int = 0

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


def write_report(report: Report, path: Optional[Path]) -> str:
    text = report.to_json()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"report written to {path}")
    return text


def write_plot_csv(rows: Sequence[dict], path: Path) -> pd.DataFrame:
    """Write the scan grid as CSV with a fixed column order."""
    frame = pd.DataFrame(list(rows), columns=PLOT_COLUMNS)
    frame = frame.round(settings.report_decimals)
    frame.to_csv(path, index=False)
    logger.info(f"plot grid with {len(frame)} rows written to {path}")
    return frame
