"""Group law, torsion and heights of sections."""

from .points import SectionPoint, add, multiply, negate
from .torsion import TorsionResult, is_torsion
from .heights import (
    ContributionTable,
    HeightReport,
    LocalSectionData,
    canonical_height_exact,
    canonical_height_limit,
    height_bound_check,
    intersection_with_zero,
    local_section_data,
    naive_height,
    passes_identity_component,
)

__all__ = [
    "SectionPoint",
    "add",
    "negate",
    "multiply",
    "TorsionResult",
    "is_torsion",
    "ContributionTable",
    "HeightReport",
    "LocalSectionData",
    "naive_height",
    "canonical_height_limit",
    "canonical_height_exact",
    "intersection_with_zero",
    "passes_identity_component",
    "local_section_data",
    "height_bound_check",
]
