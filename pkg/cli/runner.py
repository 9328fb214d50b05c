"""Execution of a job in dependency order."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from cli.jobs import Analysis, JobSpec
from cli.report import (
    CoverOut,
    FiberOut,
    HeightOut,
    InvariantsOut,
    Report,
    SumIdentityOut,
)
from mwgroup.heights import height_bound_check
from surface.invariants import (
    all_multiplicative,
    degenerate_message,
    semistable_inequality_check,
    surface_invariants,
)
from surface.minimal import local_fibers
from tangency.identity import verify_sum_identity
from tangency.zeros import plot_rows
from utils.errors import IdentityViolation, InputError, NumericalError
from utils.steps import record_check, run_step

logger = logging.getLogger(__name__)

_NEEDS_INVARIANTS = {
    Analysis.INVARIANTS,
    Analysis.BOUND,
    Analysis.HEIGHTS,
    Analysis.TANGENCIES,
    Analysis.VERIFY_ALL,
}
_NEEDS_HEIGHTS = {Analysis.HEIGHTS, Analysis.VERIFY_ALL}
_NEEDS_TANGENCIES = {Analysis.TANGENCIES, Analysis.VERIFY_ALL}


@dataclass
class RunResult:
    report: Report
    plot: List[dict] = field(default_factory=list)


def _cover_section(resolved) -> Optional[CoverOut]:
    if resolved.cover is None:
        return None
    result = resolved.pullback
    base = surface_invariants(resolved.base_model, 0)
    return CoverOut(
        map=resolved.cover.map.format("u"),
        degree=resolved.cover.degree,
        genus=resolved.cover.genus(),
        branch_places=[p.label("t") for p in resolved.cover.branch_places()],
        collisions=[r.branch.label("t") for r in result.collisions],
        base_invariants=InvariantsOut.build(base),
    )


def execute(job: JobSpec, collect_plot: bool = False) -> RunResult:
    """Run the analyses requested by ``job`` and assemble the report."""
    resolved = job.resolve()
    model = resolved.model
    point = resolved.point
    analysis = job.analysis
    warnings: List[str] = []
    report = Report(
        analysis=analysis.value,
        model={"A": model.A.format(model.variable), "B": model.B.format(model.variable)},
        variable=model.variable,
    )

    fibers = run_step("classify", local_fibers, model)
    report.fibers = [FiberOut.build(f, model.variable) for f in fibers]
    report.cover = _cover_section(resolved)
    if report.cover and report.cover.collisions:
        warnings.append(f"cover is branched over bad places: {', '.join(report.cover.collisions)}")

    inv = None
    if analysis in _NEEDS_INVARIANTS:
        base_genus = resolved.cover.genus() if resolved.cover else job.base_genus
        inv = run_step("invariants", surface_invariants, model, base_genus)
        semistable = semistable_inequality_check(inv, all_multiplicative(model), model.is_isotrivial())
        record_check("semistable inequality", semistable.holds)
        report.invariants = InvariantsOut.build(inv, semistable)
        message = degenerate_message(inv)
        if message:
            warnings.append(message)

    violated = False
    undecided = False
    plot: List[dict] = []
    wants_point = analysis in _NEEDS_HEIGHTS | _NEEDS_TANGENCIES
    if wants_point and point is None:
        if analysis is Analysis.VERIFY_ALL:
            warnings.append("no section given; heights and tangencies skipped")
        else:
            raise InputError(f"analysis {analysis.value} needs a section")
    elif wants_point and inv is not None and inv.bound < 0:
        warnings.append("degenerate surface: every section is torsion, heights and tangencies skipped")
    elif wants_point:
        if analysis in _NEEDS_HEIGHTS:
            height = run_step(
                "heights",
                height_bound_check,
                point,
                resolved.s_places,
                job.numeric.n_steps,
                job.numeric.n_max,
                inv.g,
            )
            report.height = HeightOut.build(height)
            violated |= not height.holds
            record_check("height bound", height.holds, f"{height.canonical_exact} <= {height.bound_rhs}")
        if analysis in _NEEDS_TANGENCIES:
            identity = run_step(
                "tangencies",
                verify_sum_identity,
                model,
                point,
                inv.g,
                job.numeric.grid,
                job.numeric.n_max,
                job.numeric.precision,
                job.numeric.region,
            )
            report.sum_identity = SumIdentityOut.build(identity)
            warnings.extend(identity.warnings)
            if not identity.bound_holds or (identity.complete and not identity.passed):
                violated = True
            elif not identity.complete:
                undecided = True
            if collect_plot:
                plot = _plot_from(identity)

    report.warnings = warnings
    report.passed = not (violated or undecided)
    if violated:
        report.exit_code = IdentityViolation.exit_code
    elif undecided:
        report.exit_code = NumericalError.exit_code
    else:
        report.exit_code = 0
    return RunResult(report, plot)


def _plot_from(identity) -> List[dict]:
    return plot_rows(identity.scan) if identity.scan is not None else []


def run(job: JobSpec) -> Report:
    return execute(job).report
