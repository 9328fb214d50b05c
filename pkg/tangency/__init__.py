"""Zeros of the tangency form, local indices and the global index count."""

from .winding import WindingResult, contour_winding, winding_number
from .zeros import ChartScan, TangencyRecord, newton_zero, plot_rows, scan_chart
from .indices import (
    SpecialPoint,
    bad_place_index,
    exclusion_radius,
    expected_bad_index,
    index_at_place,
    special_points,
)
from .torsion import classify_torsion_tangency, confirm_torsion_tangency, torsion_order_candidate
from .identity import SpecialIndex, SumIdentityReport, ZeroSearch, find_zeros, verify_sum_identity

__all__ = [
    "WindingResult",
    "winding_number",
    "contour_winding",
    "TangencyRecord",
    "ChartScan",
    "scan_chart",
    "newton_zero",
    "plot_rows",
    "SpecialPoint",
    "special_points",
    "exclusion_radius",
    "expected_bad_index",
    "bad_place_index",
    "index_at_place",
    "torsion_order_candidate",
    "confirm_torsion_tangency",
    "classify_torsion_tangency",
    "SpecialIndex",
    "SumIdentityReport",
    "ZeroSearch",
    "find_zeros",
    "verify_sum_identity",
]
