"""Command line entry point.

``betti <analysis> --job job.json`` runs one of the analyses on the surface
described by the job file and prints the JSON report. The process exit
code is 0 when every asserted identity holds, 1 for input errors, 2 for
numerical failures and 3 when an identity is violated.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from cli.jobs import Analysis, parse_job
from cli.report import write_plot_csv, write_report
from cli.runner import execute
from config import apply_settings, get_settings
from utils.errors import BettiError
from utils.logging_helper import check_counts, setup_logging
from utils.steps import StepError

logger = logging.getLogger(__name__)


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments.

    Numeric flags override the job file, which overrides the config file
    and ``BETTI_*`` environment variables.
    """
    parser = argparse.ArgumentParser(prog="betti", description="Tangency analysis of elliptic surfaces")
    parser.add_argument("analysis", choices=[a.value for a in Analysis], help="Analysis to run.")
    parser.add_argument("--job", required=True, help="Path to the JSON job file.")
    parser.add_argument("--out", help="Write the JSON report here as well as to stdout.")
    parser.add_argument("--plot", help="Write the scan grid as CSV (re_t, im_t, abs_eta, r, s).")
    parser.add_argument("--precision", type=float, help="Target accuracy of the numerical layer.")
    parser.add_argument("--grid", type=int, help="Grid points per axis for the zero scan.")
    parser.add_argument("--nmax", type=int, help="Largest multiple tried in torsion searches.")
    parser.add_argument("--config", help="JSON file with numerical settings.")
    parser.add_argument("--verbose", action="store_true", help="Enable debug logging.")
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else logging.INFO)
    try:
        config = get_settings(
            Path(args.config) if args.config else None,
            precision=args.precision,
            grid=args.grid,
            n_max=args.nmax,
        )
        apply_settings(config)
        text = Path(args.job).read_bytes()
        job = parse_job(text)
        numeric = job.numeric.model_copy(
            update={
                k: v
                for k, v in (("precision", args.precision), ("grid", args.grid), ("n_max", args.nmax))
                if v is not None
            }
        )
        job = job.model_copy(update={"analysis": Analysis(args.analysis), "numeric": numeric})
        result = execute(job, collect_plot=bool(args.plot))
    except OSError as exc:
        logger.error(f"cannot read input: {exc}")
        return 1
    except StepError as exc:
        logger.exception(f"unexpected failure in step {exc.step}")
        return exc.exit_code
    except BettiError as exc:
        logger.error(str(exc))
        return exc.exit_code

    sys.stdout.write(write_report(result.report, Path(args.out) if args.out else None))
    if args.plot:
        write_plot_csv(result.plot, Path(args.plot))
    logger.info(f"Run completed - checks passed: {check_counts['passed']} failed: {check_counts['failed']}")
    return result.report.exit_code


if __name__ == "__main__":
    sys.exit(main())
