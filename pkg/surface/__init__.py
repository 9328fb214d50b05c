"""Weierstrass models over Q(t), Kodaira fibers, surface invariants and covers."""

from .kodaira import KodairaFamily, KodairaType, classify_fiber
from .model import WeierstrassModel, standard_invariants
from .minimal import FiberData, bad_fibers, fiber_at, local_fibers, minimalize_at
from .invariants import (
    SemistableCheck,
    SurfaceInvariants,
    all_multiplicative,
    degenerate_flag,
    degenerate_message,
    possibly_constant,
    semistable_inequality_check,
    surface_invariants,
)
from .cover import CoverSpec, PullBackResult, Ramification, pull_back, pull_back_model, pull_back_point

__all__ = [
    "KodairaFamily",
    "KodairaType",
    "classify_fiber",
    "WeierstrassModel",
    "standard_invariants",
    "FiberData",
    "minimalize_at",
    "fiber_at",
    "local_fibers",
    "bad_fibers",
    "SurfaceInvariants",
    "surface_invariants",
    "degenerate_flag",
    "degenerate_message",
    "SemistableCheck",
    "semistable_inequality_check",
    "all_multiplicative",
    "possibly_constant",
    "CoverSpec",
    "Ramification",
    "PullBackResult",
    "pull_back",
    "pull_back_model",
    "pull_back_point",
]
