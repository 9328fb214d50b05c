"""Shared utilities: errors, logging, progress bars and timed steps."""

from .errors import BettiError, IdentityViolation, InputError, NumericalError
from .logging_helper import setup_logging
from .progress import safe_tqdm
from .steps import StepError, record_check, run_step

__all__ = [
    "BettiError",
    "InputError",
    "NumericalError",
    "IdentityViolation",
    "setup_logging",
    "safe_tqdm",
    "StepError",
    "run_step",
    "record_check",
]
