"""Timed execution of pipeline steps and bookkeeping of identity checks."""

import logging
import time
from typing import Any, Callable, TypeVar

from utils.errors import BettiError
from utils.logging_helper import count_check

T = TypeVar("T")

logger = logging.getLogger(__name__)


class StepError(BettiError):
    """Exception raised when a pipeline step fails unexpectedly."""

    exit_code = 2

    def __init__(self, step: str, original_error: Exception):
        self.step = step
        self.original_error = original_error
        super().__init__(f"step {step} failed: {original_error}", step=step)


def run_step(name: str, func: Callable[..., T], *args: Any, **kwargs: Any) -> T:
    """Run ``func`` as the named step, logging its duration.

    Known :class:`BettiError` subclasses propagate unchanged so the caller
    can map them to exit codes; anything else is wrapped in ``StepError``.
    """
    logger.info(f"Starting step: {name}")
    start_time = time.time()
    try:
        result = func(*args, **kwargs)
    except BettiError as exc:
        elapsed = time.time() - start_time
        logger.error(f"Step {name} failed after {elapsed:.2f} seconds: {exc}")
        raise
    except Exception as exc:
        elapsed = time.time() - start_time
        logger.error(f"Error in step {name}: {exc}")
        logger.info(f"Step {name} failed after {elapsed:.2f} seconds")
        raise StepError(name, exc) from exc
    elapsed = time.time() - start_time
    logger.info(f"Completed step: {name} in {elapsed:.2f} seconds")
    return result


def record_check(name: str, passed: bool, detail: str = "") -> bool:
    """Log an identity check and update the pass/fail counters."""
    count_check(name, passed)
    if passed:
        logger.info(f"Check {name} passed {detail}".rstrip())
    else:
        logger.warning(f"Check {name} FAILED {detail}".rstrip())
    return passed
