"""Exact chord indices, Morse-Bott E1 pages and wrapped Floer growth for periodic Reeb flows."""

from .graded import GradedDims, homology, shift_degrees
from .mbss import assemble_e1, degeneration_check, extract_wfh, growth_slope
from .models import (
    AkMilnor,
    CrossCotangent,
    Homogeneous,
    HypersurfaceComplement,
    ProjectiveComplement,
    build,
    chord_spectrum_from_flow,
    morse_bott_validity,
    parse_model,
    real_lagrangian_components,
)
from .rsindex import (
    HalfInteger,
    RotationPath,
    half_chord_index,
    rs_index,
    rs_index_numeric,
    weighted_homogeneous_orbit_index,
)
from .verdict import evaluate, finite_order_consistency

__version__ = "0.1.0"

__all__ = [
    "GradedDims", "homology", "shift_degrees",
    "HalfInteger", "RotationPath", "rs_index", "rs_index_numeric",
    "weighted_homogeneous_orbit_index", "half_chord_index",
    "AkMilnor", "ProjectiveComplement", "HypersurfaceComplement", "CrossCotangent", "Homogeneous",
    "build", "parse_model", "chord_spectrum_from_flow", "morse_bott_validity", "real_lagrangian_components",
    "assemble_e1", "degeneration_check", "extract_wfh", "growth_slope",
    "evaluate", "finite_order_consistency",
]
