"""Numerical layer: period lattices, elliptic logarithms and the tangency form."""

from .lattice import (
    PeriodBasis,
    agm,
    cubic_roots,
    discriminant_scale,
    eisenstein_invariants,
    period_lattice,
    raw_periods,
    real_coords,
    reduce_basis,
)
from .ellog import elliptic_log, elliptic_log_array, lattice_distance, weierstrass_p
from .betti import BettiCoords, betti_coords
from .eta import EtaEvaluator, EtaSample, align_frame, chart_coordinate, eta_P
from .transport import TransportResult, transport

__all__ = [
    "PeriodBasis",
    "agm",
    "cubic_roots",
    "discriminant_scale",
    "eisenstein_invariants",
    "period_lattice",
    "raw_periods",
    "real_coords",
    "reduce_basis",
    "elliptic_log",
    "elliptic_log_array",
    "lattice_distance",
    "weierstrass_p",
    "BettiCoords",
    "betti_coords",
    "EtaEvaluator",
    "EtaSample",
    "align_frame",
    "chart_coordinate",
    "eta_P",
    "TransportResult",
    "transport",
]
