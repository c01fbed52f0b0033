"""Arc-blended wheel geometry.

A wheel is a parent circle of radius ``r_p`` carrying ``n_c`` evenly spaced
child circles of radius ``r_c`` centred on its circumference.  The rim is the
outer envelope of the child circles.  All lengths are in mm, angles in rad.

Angle conventions: child ``i`` sits at polar angle ``phase + 2*pi*i/n_c``
about the wheel centre, measured counter-clockwise from +x.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import DisjointChildCircles, ValidationError

DEFAULT_CHILD_RADIUS = 10.0


def nc_lower_bound(r_p, r_c):
    """Smallest child count whose circles cover the parent rim.

    Matches ``n * 2 r_c >= 2 pi r_p``: the child diameters laid along the
    parent circumference must at least span it.
    """
    if r_p <= 0 or r_c <= 0:
        raise ValidationError("r_p and r_c must be positive", [f"r_p={r_p}", f"r_c={r_c}"])
    x = math.pi * r_p / r_c
    n = math.ceil(x)
    # guard against x landing a hair above an integer through rounding
    if n - x > 1 - 1e-12:
        n -= 1
    return int(n)


@dataclass(frozen=True)
class WheelSpec:
    parent_radius: float
    child_radius: float = DEFAULT_CHILD_RADIUS
    child_count: int = 16

    def __post_init__(self):
        problems = []
        if not self.parent_radius > 0:
            problems.append(f"parent_radius must be > 0, got {self.parent_radius}")
        if not self.child_radius > 0:
            problems.append(f"child_radius must be > 0, got {self.child_radius}")
        if int(self.child_count) != self.child_count or self.child_count < 3:
            problems.append(f"child_count must be an integer >= 3, got {self.child_count}")
        if problems:
            raise ValidationError("invalid WheelSpec", problems)
        object.__setattr__(self, "child_count", int(self.child_count))

    @property
    def covers_rim(self):
        """True when the child circles leave no parent-circle segment exposed."""
        return self.child_count >= nc_lower_bound(self.parent_radius, self.child_radius)

    @property
    def r_p(self):
        return self.parent_radius

    @property
    def r_c(self):
        return self.child_radius

    @property
    def n_c(self):
        return self.child_count

    @property
    def spacing(self):
        """Angle between neighbouring child centres."""
        return 2.0 * math.pi / self.child_count

    @property
    def outer_radius(self):
        return self.parent_radius + self.child_radius

    @property
    def arc_half_span(self):
        """Half-angle of the exposed arc of one child, seen from its centre.

        Measured from the outward radial through the child centre to the cusp
        shared with a neighbour.
        """
        return exposed_arc_half_span(self.parent_radius, self.child_radius, self.spacing)

    @property
    def cusp_radius(self):
        """Distance from the wheel centre to the outer neighbour intersections."""
        half = self.spacing / 2.0
        s = self.parent_radius * math.sin(half)
        return self.parent_radius * math.cos(half) + math.sqrt(self.child_radius**2 - s * s)


def exposed_arc_half_span(r_p, r_c, spacing):
    s = r_p * math.sin(spacing / 2.0) / r_c
    if s > 1.0:
        raise DisjointChildCircles(
            f"neighbouring child circles do not intersect (r_p sin(delta/2) / r_c = {s:.6g})"
        )
    return spacing / 2.0 + math.asin(s)


def transverse_amplitude(wheel):
    """Peak-to-trough wheel-centre oscillation when rolling on flat ground."""
    return wheel.parent_radius * (1.0 - math.cos(math.pi / wheel.child_count))


def transverse_frequency(wheel):
    """Oscillations per wheel revolution."""
    return wheel.child_count


def wrap_to_sector(angle, n_c):
    """Reduce ``angle`` into ``[-pi/n_c, pi/n_c]``."""
    delta = 2.0 * math.pi / n_c
    return (np.asarray(angle, dtype=float) + delta / 2.0) % delta - delta / 2.0


def rolling_height(wheel, roll_angle):
    """Height of the wheel centre above flat ground.

    ``roll_angle`` is the wheel rotation measured so that 0 puts a child
    centre directly below the wheel centre.  Accepts scalars or arrays.
    """
    phi = wrap_to_sector(roll_angle, wheel.child_count)
    h = wheel.child_radius + wheel.parent_radius * np.cos(phi)
    return float(h) if np.ndim(h) == 0 else h


@dataclass(frozen=True)
class ArcSegment:
    """Circular arc traversed counter-clockwise from ``start`` to ``end``."""

    center: tuple
    radius: float
    start: float
    end: float

    def point(self, angle):
        cx, cy = self.center
        return (cx + self.radius * math.cos(angle), cy + self.radius * math.sin(angle))

    @property
    def start_point(self):
        return self.point(self.start)

    @property
    def end_point(self):
        return self.point(self.end)

    def sample(self, step):
        """Points along the arc, endpoint excluded, at most ``step`` rad apart."""
        count = max(1, math.ceil((self.end - self.start) / step))
        t = self.start + (self.end - self.start) * np.arange(count) / count
        cx, cy = self.center
        return np.column_stack([cx + self.radius * np.cos(t), cy + self.radius * np.sin(t)])


@dataclass(frozen=True)
class WheelProfile:
    wheel: WheelSpec
    segments: tuple
    phase: float = 0.0

    @property
    def period(self):
        return 2.0 * math.pi / self.wheel.child_count

    def vertices(self):
        """Arc junctions (the cusps), in traversal order, shape ``(n_c, 2)``."""
        return np.array([seg.start_point for seg in self.segments])

    def sample(self, step=math.radians(0.1)):
        """Closed polyline of boundary points; the first point is not repeated."""
        return np.vstack([seg.sample(step) for seg in self.segments])

    def radial_extent(self, angles):
        """Boundary distance from the wheel centre along rays at ``angles``."""
        return envelope_radius(self.wheel, np.asarray(angles, dtype=float) - self.phase)

    def max_radius(self):
        # every arc spans its own outward direction, where the distance peaks
        return float(max(math.hypot(*seg.center) + seg.radius for seg in self.segments))


def envelope_radius(wheel, angles):
    """Polar radius of the rim for rays at ``angles`` (phase zero)."""
    a = wrap_to_sector(angles, wheel.child_count)
    r_p, r_c = wheel.parent_radius, wheel.child_radius
    s = r_p * np.sin(a)
    return r_p * np.cos(a) + np.sqrt(r_c * r_c - s * s)


def wheel_profile(wheel, phase=0.0):
    """Build the closed arc-segment rim of ``wheel``.

    Each child contributes the arc between its two cusps with the
    neighbouring children; consecutive arcs share endpoints.
    """
    if not wheel.covers_rim:
        n_lb = nc_lower_bound(wheel.parent_radius, wheel.child_radius)
        raise DisjointChildCircles(
            f"{wheel.child_count} child circles of radius {wheel.child_radius} leave "
            f"parent-circle segments exposed (need at least {n_lb})"
        )
    half = wheel.arc_half_span
    segments = []
    for i in range(wheel.child_count):
        theta = phase + i * wheel.spacing
        center = (wheel.parent_radius * math.cos(theta), wheel.parent_radius * math.sin(theta))
        segments.append(ArcSegment(center, wheel.child_radius, theta - half, theta + half))
    return WheelProfile(wheel, tuple(segments), phase)
