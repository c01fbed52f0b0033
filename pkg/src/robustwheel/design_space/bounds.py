"""Ranges for the three control factors."""

from collections.abc import Sequence
from dataclasses import dataclass, field

from ..exceptions import InfeasibleBounds, ValidationError
from .feasibility import DEFAULT_GRID, DEFAULT_TOL, nc_upper_bound
from .geometry import DEFAULT_CHILD_RADIUS, nc_lower_bound
from .stairs import DEFAULT_STAIRS, IBC_MAX_OVERHANG, IBC_MIN_RISER, ModuleGeometry

# Module-length range taken as given; its derivation depends on the robot's
# mass layout, which is not modelled here.
MODULE_LENGTH_BOUNDS = (210.96, 352.37)


def rp_bounds(r_c=DEFAULT_CHILD_RADIUS, o_max=IBC_MAX_OVERHANG, riser_min=IBC_MIN_RISER):
    """Parent-radius range ``(rp_min, rp_max)``.

    The wheel must reach past the largest overhang, ``r_p + r_c >= o_max``,
    while its diameter stays within three quarters of the smallest riser,
    ``2 (r_p + r_c) <= 0.75 riser_min``.
    """
    problems = []
    if r_c < 0:
        problems.append(f"r_c must be >= 0, got {r_c}")
    if not o_max > 0:
        problems.append(f"o_max must be > 0, got {o_max}")
    if not riser_min > 0:
        problems.append(f"riser_min must be > 0, got {riser_min}")
    if problems:
        raise ValidationError("invalid parent-radius bound inputs", problems)
    lo = o_max - r_c
    hi = 0.375 * riser_min - r_c
    if lo > hi:
        raise InfeasibleBounds(
            f"parent radius range is empty: {lo:.6g} mm > {hi:.6g} mm",
            [f"r_c={r_c}", f"o_max={o_max}", f"riser_min={riser_min}"],
        )
    return lo, hi


@dataclass(frozen=True)
class DesignBounds:
    rp_min: float
    rp_max: float
    lm_min: float
    lm_max: float
    nc_min: int
    nc_max: int
    # inputs the bounds were derived from, kept for the report
    inputs: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        problems = []
        for name in ("rp", "lm", "nc"):
            lo, hi = getattr(self, f"{name}_min"), getattr(self, f"{name}_max")
            if lo > hi:
                problems.append(f"{name}_min {lo} > {name}_max {hi}")
        if self.nc_min < 1 or self.nc_max < 1:
            problems.append("child-count bounds must be positive")
        if problems:
            raise ValidationError("invalid DesignBounds", problems)

    def as_rows(self):
        return [
            ("parent_radius_mm", self.rp_min, self.rp_max),
            ("module_length_mm", self.lm_min, self.lm_max),
            ("child_count", self.nc_min, self.nc_max),
        ]

    def deviations(self, published, tol=0.01):
        """Compare against published ``{"rp": (lo, hi), ...}`` values.

        Returns ``(quantity, side, ours, published)`` for each entry that
        differs by more than ``tol``.
        """
        out = []
        for key, label in (("rp", "parent_radius_mm"), ("lm", "module_length_mm"),
                           ("nc", "child_count")):
            if key not in published:
                continue
            for side, ours, theirs in zip(("min", "max"),
                                          (getattr(self, f"{key}_min"), getattr(self, f"{key}_max")),
                                          published[key]):
                if abs(ours - theirs) > tol:
                    out.append((label, side, ours, theirs))
        return out


def design_bounds(r_c=DEFAULT_CHILD_RADIUS, o_max=IBC_MAX_OVERHANG, riser_min=IBC_MIN_RISER,
                  lm_bounds=MODULE_LENGTH_BOUNDS, stairs=DEFAULT_STAIRS, module=None,
                  rp_level=None, grid=DEFAULT_GRID, tol=DEFAULT_TOL):
    """Assemble parent-radius, module-length and child-count ranges.

    The child-count range is evaluated at ``rp_level`` (default: ``rp_max``),
    normally the largest parent radius actually used as a factor level.  The
    upper count must clear the overhang on every stair in ``stairs``; the
    module defaults to the longest allowed one, the hardest case for folding.
    """
    rp_min, rp_max = rp_bounds(r_c, o_max, riser_min)
    lm_min, lm_max = float(lm_bounds[0]), float(lm_bounds[1])
    if module is None:
        module = ModuleGeometry(lm_max)
    if not isinstance(stairs, Sequence):
        stairs = [stairs]
    r_p = rp_max if rp_level is None else rp_level
    nc_min = nc_lower_bound(r_p, r_c)
    nc_max = min(nc_upper_bound(r_p, r_c, s, module, grid=grid, tol=tol) for s in stairs)
    inputs = {
        "r_c": r_c,
        "o_max": o_max,
        "riser_min": riser_min,
        "rp_level": r_p,
        "module_length": module.module_length,
        "stairs": tuple(stairs),
    }
    return DesignBounds(rp_min, rp_max, lm_min, lm_max, nc_min, nc_max, inputs)
