"""Job files, report assembly and the ``betti`` command."""

from .jobs import Analysis, JobSpec, NumericSpec, ResolvedJob, parse_job
from .report import Report, write_plot_csv, write_report
from .runner import RunResult, execute, run

__all__ = [
    "Analysis",
    "JobSpec",
    "NumericSpec",
    "ResolvedJob",
    "parse_job",
    "Report",
    "write_report",
    "write_plot_csv",
    "RunResult",
    "execute",
    "run",
]
