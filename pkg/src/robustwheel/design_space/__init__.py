"""Wheel and stair geometry, control-factor bounds and the overhang test."""

from .bounds import MODULE_LENGTH_BOUNDS, DesignBounds, design_bounds, rp_bounds
from .contact import MomentSign, OverhangContact, moment_sign
from .feasibility import (
    ContactConfiguration,
    NcFeasibilityProblem,
    best_arc_contact,
    circular_wheel_contact,
    feasible_counts,
    nc_upper_bound,
)
from .export import (
    bounds_csv,
    bounds_text,
    profile_polyline,
    profile_polyline_csv,
    profile_svg,
    profile_svg_path,
    wheel_metrics_line,
)
from .geometry import (
    ArcSegment,
    WheelProfile,
    WheelSpec,
    nc_lower_bound,
    rolling_height,
    transverse_amplitude,
    transverse_frequency,
    wheel_profile,
)
from .stairs import DEFAULT_STAIRS, IBC_MAX_OVERHANG, IBC_MIN_RISER, ModuleGeometry, StairSpec

__all__ = [
    "feasible_counts",
    "bounds_csv",
    "bounds_text",
    "profile_polyline",
    "profile_polyline_csv",
    "profile_svg",
    "profile_svg_path",
    "wheel_metrics_line",
    "ArcSegment",
    "ContactConfiguration",
    "DEFAULT_STAIRS",
    "DesignBounds",
    "IBC_MAX_OVERHANG",
    "IBC_MIN_RISER",
    "MODULE_LENGTH_BOUNDS",
    "ModuleGeometry",
    "MomentSign",
    "NcFeasibilityProblem",
    "OverhangContact",
    "StairSpec",
    "WheelProfile",
    "WheelSpec",
    "best_arc_contact",
    "circular_wheel_contact",
    "design_bounds",
    "moment_sign",
    "nc_lower_bound",
    "nc_upper_bound",
    "rolling_height",
    "rp_bounds",
    "transverse_amplitude",
    "transverse_frequency",
    "wheel_profile",
]
