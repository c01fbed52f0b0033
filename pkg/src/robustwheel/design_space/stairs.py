"""Stair and robot-module descriptions used by the bound computations."""

from dataclasses import dataclass

from ..exceptions import ValidationError

# Largest nosing projection allowed by the International Building Code.
IBC_MAX_OVERHANG = 31.75
IBC_MIN_RISER = 177.8
# The overhang's lower tip sits one tread-slab thickness below the upper tread.
DEFAULT_NOSING_THICKNESS = 25.4

DEFAULT_CLEARANCE = 100.0
# Joint spring constants in N*mm/deg: (k1+, k1-, k2+, k2-); '+' opposes
# counter-clockwise moments.
DEFAULT_STIFFNESS = (74.47, 67.56, 48.89, 57.61)


@dataclass(frozen=True)
class StairSpec:
    riser: float
    tread: float
    overhang: float = IBC_MAX_OVERHANG
    friction_coefficient: float = 0.0
    nosing_thickness: float = DEFAULT_NOSING_THICKNESS
    enforce_ibc: bool = True

    def __post_init__(self):
        problems = []
        if not self.riser > 0:
            problems.append(f"riser must be > 0, got {self.riser}")
        if not self.tread > 0:
            problems.append(f"tread must be > 0, got {self.tread}")
        if not self.overhang >= 0:
            problems.append(f"overhang must be >= 0, got {self.overhang}")
        if not self.friction_coefficient >= 0:
            problems.append(f"friction_coefficient must be >= 0, got {self.friction_coefficient}")
        if not 0 <= self.nosing_thickness < self.riser:
            problems.append(
                f"nosing_thickness must lie in [0, riser), got {self.nosing_thickness}"
            )
        if self.enforce_ibc and self.overhang > IBC_MAX_OVERHANG:
            problems.append(f"overhang {self.overhang} exceeds the IBC limit {IBC_MAX_OVERHANG}")
        if problems:
            raise ValidationError("invalid StairSpec", problems)

    @property
    def tip_height(self):
        """Height of the overhang's lower tip above the lower tread."""
        return self.riser - self.nosing_thickness


@dataclass(frozen=True)
class ModuleGeometry:
    module_length: float
    clearance: float = DEFAULT_CLEARANCE
    joint_stiffness: tuple = DEFAULT_STIFFNESS

    def __post_init__(self):
        problems = []
        if not self.module_length > 0:
            problems.append(f"module_length must be > 0, got {self.module_length}")
        if len(self.joint_stiffness) != 4:
            problems.append("joint_stiffness needs four constants (k1+, k1-, k2+, k2-)")
        elif any(k < 0 for k in self.joint_stiffness):
            problems.append(f"joint_stiffness must be nonnegative, got {self.joint_stiffness}")
        if problems:
            raise ValidationError("invalid ModuleGeometry", problems)
        object.__setattr__(self, "joint_stiffness", tuple(float(k) for k in self.joint_stiffness))


# Three IBC-compliant stairs used as the noise levels.  The risers are our
# choice; only the 177.8 mm minimum riser and the 31.75 mm overhang limit are
# fixed by the building code.
DEFAULT_STAIRS = (
    StairSpec(riser=177.8, tread=279.4, overhang=IBC_MAX_OVERHANG),
    StairSpec(riser=190.5, tread=279.4, overhang=IBC_MAX_OVERHANG),
    StairSpec(riser=203.2, tread=279.4, overhang=IBC_MAX_OVERHANG),
)
