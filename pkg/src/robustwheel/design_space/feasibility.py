"""Upper bound on the child-circle count from the overhang moment condition.

The climbing wheel of the front module is pressed against the riser face by
child 0 and touches the overhang tip with child ``p``.  Working in a frame
centred on that wheel with child ``k`` at polar angle ``phi1 + k*delta``:

* the riser face is the vertical line ``x = r_p cos(phi1) + r_c``;
* the tip sits ``overhang`` behind it and ``nosing_thickness`` below the
  upper tread, ``x_tip = x_riser - overhang``, and on
  child ``p`` at angle ``theta - phi2`` about that child's centre, where
  ``theta = phi1 + p*delta``.  Equating the two x coordinates is the closure
  equation solved here; the y coordinate then fixes how high the wheel has
  climbed up the riser;
* the folding axis is the centre of the module's rear wheel, resting on the
  lower tread one module length behind;
* ``phi3`` is the inclination of the line from that axis to the tip and
  ``phi4`` the inclination of the tip's normal reaction.  The reaction turns
  the module counter-clockwise (climb) iff ``phi4 <= phi3``.

A child count is feasible when some wheel rotation ``phi1`` and some index
``p`` give a contact that satisfies all of the above.  The search is a
deterministic grid over ``phi1`` and ``phi2``; sign changes of the closure
residual along ``phi2`` are refined by bisection.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import NoFeasibleN, ValidationError
from .contact import OverhangContact, moment_sign
from .geometry import WheelSpec, envelope_radius, nc_lower_bound

DEFAULT_GRID = 1000
DEFAULT_TOL = 1e-6
_BISECT_STEPS = 60


@dataclass(frozen=True)
class ContactConfiguration:
    """One solution of the closure system, in the climbing-wheel frame."""

    n: int
    p: int
    phi1: float
    phi2: float
    phi3: float
    phi4: float
    tip: tuple  # relative to the climbing wheel centre
    wheel_center: tuple
    axis: tuple
    residual: float

    # wheel_center and axis are in stair coordinates: riser face at x = 0,
    # lower tread at y = 0, so the tip is at (-overhang, tip_height).

    @property
    def normal_angle(self):
        return self.phi4

    def contact(self, friction_coefficient=0.0):
        """Contact record in stair coordinates."""
        tx = self.wheel_center[0] + self.tip[0]
        ty = self.wheel_center[1] + self.tip[1]
        normal = (-math.cos(self.phi4), -math.sin(self.phi4))
        return OverhangContact((tx, ty), normal, self.axis, friction_coefficient)


@dataclass(frozen=True)
class NcFeasibilityProblem:
    r_p: float
    r_c: float
    stair: object
    module_length: float
    grid: int = DEFAULT_GRID
    tol: float = DEFAULT_TOL
    check_moment: bool = True

    def __post_init__(self):
        problems = []
        if not self.r_p > 0 or not self.r_c > 0:
            problems.append(f"radii must be positive (r_p={self.r_p}, r_c={self.r_c})")
        if not self.module_length > 0:
            problems.append(f"module_length must be positive, got {self.module_length}")
        if self.grid < 2:
            problems.append(f"grid must be >= 2, got {self.grid}")
        if problems:
            raise ValidationError("invalid feasibility problem", problems)

    def phi2_max(self, n):
        """Upper end of the allowed phi2 range, or None if neighbours are disjoint."""
        half = math.pi / n
        s = self.r_p * math.sin(half) / self.r_c
        if s > 1.0:
            return None
        return half + math.asin(s)

    def p_max(self, n):
        return math.ceil(n / 4)

    def configurations(self, n, check_moment=None, first_only=False):
        """All grid solutions for child count ``n`` passing every constraint."""
        if check_moment is None:
            check_moment = self.check_moment
        out = []
        for p in range(1, self.p_max(n) + 1):
            for cfg in self._solutions_for_p(n, p, check_moment):
                out.append(cfg)
                if first_only:
                    return out
        return out

    def is_feasible(self, n, check_moment=None):
        return bool(self.configurations(n, check_moment, first_only=True))

    def _solutions_for_p(self, n, p, check_moment):
        r_p, r_c = self.r_p, self.r_c
        o = self.stair.overhang
        delta = 2.0 * math.pi / n
        top = self.phi2_max(n)
        if top is None:
            return
        phi1 = -delta / 2.0 + delta * np.arange(1, self.grid + 1) / self.grid
        phi2 = np.linspace(0.0, top, self.grid)

        def residual(a, b):
            theta = a + p * delta
            lhs = r_p * np.cos(a) + r_c - o
            return r_p * np.cos(theta) + r_c * np.cos(theta - b) - lhs

        f = residual(phi1[:, None], phi2[None, :])
        rows, cols = np.nonzero((f[:, :-1] * f[:, 1:] <= 0.0) & (f[:, :-1] != f[:, 1:]))
        if rows.size == 0:
            return
        a = phi1[rows]
        lo, hi = phi2[cols].copy(), phi2[cols + 1].copy()
        f_lo = f[rows, cols]
        for _ in range(_BISECT_STEPS):
            mid = 0.5 * (lo + hi)
            f_mid = residual(a, mid)
            left = np.sign(f_mid) == np.sign(f_lo)
            lo = np.where(left, mid, lo)
            f_lo = np.where(left, f_mid, f_lo)
            hi = np.where(left, hi, mid)
        b = 0.5 * (lo + hi)
        res = np.abs(residual(a, b))
        rhs = np.abs(r_p * np.cos(a) + r_c - o)
        ok = res <= self.tol * np.maximum(1.0, rhs)
        # riser contact is made by child 0: its neighbours sit no further forward
        ok &= r_p * np.cos(a + delta) <= r_p * np.cos(a) + 1e-12
        ok &= r_p * np.cos(a - delta) <= r_p * np.cos(a) + 1e-12
        a, b, res = a[ok], b[ok], res[ok]
        if a.size == 0:
            return

        theta = a + p * delta
        psi = theta - b
        x_riser = r_p * np.cos(a) + r_c
        x_tip = x_riser - o
        y_tip = r_p * np.sin(theta) + r_c * np.sin(psi)
        # tip contact is locally first contact only if the rim leaves it downward
        ok = (psi >= -1e-12) & (psi <= math.pi / 2)
        # wheel centre height above the lower tread; the rim must clear the tread
        wheel_y = self.stair.tip_height - y_tip
        down = envelope_radius_at(r_p, r_c, n, -math.pi / 2 - a)
        ok &= wheel_y >= down - 1e-9
        ground_y = r_p + r_c
        rise = wheel_y - ground_y
        ok &= np.abs(rise) <= self.module_length
        if not ok.any():
            return
        a, b, res, theta, psi = a[ok], b[ok], res[ok], theta[ok], psi[ok]
        x_tip, y_tip, wheel_y, rise = x_tip[ok], y_tip[ok], wheel_y[ok], rise[ok]
        x_riser = x_riser[ok]

        run = np.sqrt(self.module_length**2 - rise**2)
        phi3 = np.arctan2(self.stair.tip_height - ground_y, x_tip + run)
        phi4 = psi
        mu = self.stair.friction_coefficient
        if check_moment:
            # cheap prefilter; the exact cross-product test runs per candidate
            keep = phi4 - math.atan(mu) <= phi3 + 1e-9
        else:
            keep = np.ones_like(phi4, dtype=bool)
        for i in np.nonzero(keep)[0]:
            cfg = ContactConfiguration(
                n=n,
                p=p,
                phi1=float(a[i]),
                phi2=float(b[i]),
                phi3=float(phi3[i]),
                phi4=float(phi4[i]),
                tip=(float(x_tip[i]), float(y_tip[i])),
                wheel_center=(float(-x_riser[i]), float(wheel_y[i])),
                axis=(float(-x_riser[i] - run[i]), float(ground_y)),
                residual=float(res[i]),
            )
            if check_moment and not moment_sign(cfg.contact(mu)).climbs:
                continue
            if not self._clear_of_overhang(n, a[i], x_tip[i], y_tip[i]):
                continue
            yield cfg

    def _clear_of_overhang(self, n, phi1, x_tip, y_tip, step=math.radians(0.05)):
        """No rim point lies inside the nosing (x > x_tip and y > y_tip)."""
        angles = np.arange(0.0, math.pi, step)
        r = envelope_radius_at(self.r_p, self.r_c, n, angles - phi1)
        x, y = r * np.cos(angles), r * np.sin(angles)
        scale = self.r_p + self.r_c
        inside = (x > x_tip + 1e-9 * scale) & (y > y_tip + 1e-9 * scale)
        return not inside.any()


def envelope_radius_at(r_p, r_c, n, angles):
    return envelope_radius(WheelSpec(r_p, r_c, n), angles)


def feasible_counts(problem, n_values, check_moment=None):
    return {int(n): problem.is_feasible(int(n), check_moment) for n in n_values}


def nc_upper_bound(r_p, r_c, stair, module, n_max=None, grid=DEFAULT_GRID, tol=DEFAULT_TOL,
                   check_moment=True):
    """Largest child count whose overhang reaction can still fold the module.

    Scans upward from the coverage lower bound and stops at the first
    infeasible count past the last feasible one, or at ``n_max``.
    """
    module_length = getattr(module, "module_length", module)
    problem = NcFeasibilityProblem(r_p, r_c, stair, module_length, grid, tol, check_moment)
    n_lb = nc_lower_bound(r_p, r_c)
    if n_max is None:
        n_max = max(4 * n_lb, n_lb + 64)
    best = None
    for n in range(n_lb, n_max + 1):
        if problem.is_feasible(n):
            best = n
        elif best is not None:
            break
    if best is None:
        raise NoFeasibleN(
            f"no child count in [{n_lb}, {n_max}] lets the overhang reaction fold the module",
            [f"r_p={r_p}", f"r_c={r_c}", f"stair={stair}", f"module_length={module_length}"],
        )
    return best


def circular_wheel_contact(radius, stair, module_length):
    """Contact of a plain circular wheel pressed against riser and overhang tip.

    Returns ``None`` when the wheel is too small to reach past the nosing, in
    which case it would meet the underside rather than the tip.
    """
    if radius <= stair.overhang:
        return None
    # stair coordinates: riser face at x = 0, lower tread at y = 0
    ground_y = radius
    dx = radius - stair.overhang  # tip ahead of the wheel centre
    dy = math.sqrt(radius * radius - dx * dx)
    wheel_y = stair.tip_height - dy
    rise = wheel_y - ground_y
    if abs(rise) > module_length:
        raise ValidationError(
            "module too short to reach the overhang", [f"module_length={module_length}"]
        )
    run = math.sqrt(module_length**2 - rise**2)
    tip = (-stair.overhang, stair.tip_height)
    return OverhangContact.on_circle(
        tip, (-radius, wheel_y), (-radius - run, ground_y), stair.friction_coefficient
    )


def best_arc_contact(wheel, stair, module_length, grid=DEFAULT_GRID, tol=DEFAULT_TOL):
    """Arc-wheel tip contact with the largest counter-clockwise margin.

    Considers every wheel rotation on the grid, not only climbing ones, and
    returns ``None`` if the wheel never reaches the tip from the riser.
    """
    problem = NcFeasibilityProblem(
        wheel.parent_radius, wheel.child_radius, stair, module_length, grid, tol
    )
    configs = problem.configurations(wheel.child_count, check_moment=False)
    if not configs:
        return None
    return max(configs, key=lambda c: c.phi3 - c.phi4)
