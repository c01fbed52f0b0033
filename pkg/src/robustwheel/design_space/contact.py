"""Climb-or-jam test for a wheel pressed against an overhang tip.

Frame: x points in the direction of travel, y up, counter-clockwise moments
are positive.  A counter-clockwise moment about the module's folding axis
lifts the front wheel, so a positive verdict means the module can fold and
climb; otherwise it jams under the nosing.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..exceptions import DegenerateGeometry, ValidationError


class MomentSign(Enum):
    POSITIVE = "positive"
    NONPOSITIVE = "nonpositive"

    @property
    def climbs(self):
        return self is MomentSign.POSITIVE

    def __str__(self):
        return "climb" if self.climbs else "jam"


def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class OverhangContact:
    """Contact between the wheel rim and the overhang tip.

    ``normal`` is the direction of the reaction the overhang exerts on the
    wheel (pointing into the wheel).  It is normalised on construction.
    """

    point: tuple
    normal: tuple
    axis: tuple
    friction_coefficient: float = 0.0

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        length = float(np.hypot(*n))
        if not length > 0:
            raise ValidationError("contact normal must be nonzero", [f"normal={self.normal}"])
        if not self.friction_coefficient >= 0:
            raise ValidationError(
                "friction coefficient must be >= 0", [f"mu={self.friction_coefficient}"]
            )
        object.__setattr__(self, "normal", (float(n[0] / length), float(n[1] / length)))
        object.__setattr__(self, "point", tuple(float(v) for v in self.point))
        object.__setattr__(self, "axis", tuple(float(v) for v in self.axis))

    @classmethod
    def on_circle(cls, point, center, axis, friction_coefficient=0.0):
        """Contact on a circular arc: the normal runs from ``point`` to ``center``."""
        normal = (center[0] - point[0], center[1] - point[1])
        return cls(point, normal, axis, friction_coefficient)

    @property
    def lever(self):
        return (self.point[0] - self.axis[0], self.point[1] - self.axis[1])

    def cone_rays(self):
        """Normal plus the two friction-cone edge directions."""
        half = math.atan(self.friction_coefficient)
        nx, ny = self.normal
        rays = [(nx, ny)]
        if half > 0:
            for a in (half, -half):
                c, s = math.cos(a), math.sin(a)
                rays.append((c * nx - s * ny, s * nx + c * ny))
        return rays

    def moments(self, magnitude=1.0):
        """Moment about the axis of a unit force along each cone ray."""
        lever = self.lever
        return [magnitude * cross2(lever, ray) for ray in self.cone_rays()]


def moment_sign(contact, tol=0.0):
    """Whether some admissible contact force turns the module counter-clockwise.

    The moment is linear in the force direction, so its extremes over the
    friction cone lie on the edge rays; checking those and the normal is
    exhaustive.
    """
    lever = contact.lever
    scale = math.hypot(*lever)
    if scale <= 1e-12:
        raise DegenerateGeometry("contact point coincides with the folding axis")
    best = max(contact.moments())
    return MomentSign.POSITIVE if best > tol * scale else MomentSign.NONPOSITIVE
