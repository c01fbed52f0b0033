import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from robustwheel.design_space import (
    MomentSign,
    OverhangContact,
    StairSpec,
    WheelSpec,
    best_arc_contact,
    circular_wheel_contact,
    moment_sign,
    wheel_profile,
)
from robustwheel.exceptions import DegenerateGeometry, ValidationError

coord = st.floats(-500, 500)
STAIR = StairSpec(riser=177.8, tread=279.4, overhang=31.75, nosing_thickness=25.4)
TIP = (-31.75, 152.4)


def torque(point, force, axis):
    # plain z component of r x F
    rx, ry = point[0] - axis[0], point[1] - axis[1]
    return rx * force[1] - ry * force[0]


class TestMomentSign:
    def test_force_ahead_of_axis_pushing_up_turns_ccw(self):
        c = OverhangContact(point=(10, 0), normal=(0, 1), axis=(0, 0))
        assert moment_sign(c) is MomentSign.POSITIVE
        assert str(moment_sign(c)) == "climb"

    def test_reversed_force_jams(self):
        c = OverhangContact(point=(10, 0), normal=(0, -1), axis=(0, 0))
        assert moment_sign(c) is MomentSign.NONPOSITIVE
        assert str(moment_sign(c)) == "jam"

    def test_force_through_axis_is_nonpositive(self):
        c = OverhangContact(point=(10, 10), normal=(-1, -1), axis=(0, 0))
        assert moment_sign(c) is MomentSign.NONPOSITIVE

    def test_friction_can_rescue(self):
        # normal points slightly clockwise; a 0.2 friction cone reaches CCW
        c = OverhangContact((10, 0), (math.sin(0.1), -math.cos(0.1)), (0, 0), 0.0)
        assert moment_sign(c) is MomentSign.NONPOSITIVE
        tilted = OverhangContact((10, 0), (-1, 0.05), (0, 0), 0.2)
        assert moment_sign(tilted) is MomentSign.POSITIVE
        assert moment_sign(OverhangContact((10, 0), (-1, 0.05), (0, 0), 0.0)).climbs

    def test_point_on_axis_rejected(self):
        with pytest.raises(DegenerateGeometry):
            moment_sign(OverhangContact((1, 1), (0, 1), (1, 1)))

    def test_zero_normal_rejected(self):
        with pytest.raises(ValidationError):
            OverhangContact((1, 1), (0, 0), (0, 0))

    def test_negative_friction_rejected(self):
        with pytest.raises(ValidationError):
            OverhangContact((1, 1), (0, 1), (0, 0), -0.1)

    @given(coord, coord, coord, coord, coord, coord)
    def test_frictionless_equals_cross_product_sign(self, px, py, nx, ny, ax, ay):
        assume(math.hypot(nx, ny) > 1e-3 and math.hypot(px - ax, py - ay) > 1e-3)
        c = OverhangContact((px, py), (nx, ny), (ax, ay))
        expected = torque((px, py), (nx, ny), (ax, ay)) > 0
        # stay clear of the exact zero where rounding could flip either way
        assume(abs(torque((px, py), (nx, ny), (ax, ay))) > 1e-6 * math.hypot(nx, ny))
        assert moment_sign(c).climbs == expected

    @given(coord, coord, st.floats(-math.pi, math.pi), st.floats(0, 2))
    def test_friction_only_helps(self, px, py, ang, mu):
        assume(math.hypot(px, py) > 1e-3)
        base = OverhangContact((px, py), (math.cos(ang), math.sin(ang)), (0, 0))
        rough = OverhangContact((px, py), (math.cos(ang), math.sin(ang)), (0, 0), mu)
        if base.moments()[0] > 0:
            assert moment_sign(rough).climbs


class TestWheelContacts:
    def test_circle_jams(self):
        c = circular_wheel_contact(55.0, STAIR, 260.0)
        assert c.point == pytest.approx(TIP)
        assert moment_sign(c) is MomentSign.NONPOSITIVE

    def test_arc_wheel_climbs_at_same_tip(self):
        wheel = WheelSpec(45, 10, 16)
        cfg = best_arc_contact(wheel, STAIR, 260.0)
        contact = cfg.contact(0.0)
        assert contact.point == pytest.approx(TIP, abs=1e-6)
        assert moment_sign(contact) is MomentSign.POSITIVE

    def test_arc_contact_lies_on_the_rim(self):
        # independent check: rebuild the rim about the reported wheel centre
        wheel = WheelSpec(45, 10, 16)
        cfg = best_arc_contact(wheel, STAIR, 260.0)
        profile = wheel_profile(wheel, phase=cfg.phi1)
        cx, cy = cfg.wheel_center
        tip_local = np.array(TIP) - (cx, cy)
        centers = np.array([s.center for s in profile.segments])
        d = np.hypot(*(centers - tip_local).T)
        assert d.min() == pytest.approx(10, abs=1e-5)
        # the touching child is the one the search reports
        assert int(np.argmin(np.abs(d - 10))) == cfg.p
        # its outward normal at the tip gives the reported reaction angle
        nx, ny = tip_local - centers[cfg.p]
        assert math.atan2(ny, nx) == pytest.approx(cfg.phi4, abs=1e-5)
        # the frictionless torque about the folding axis, computed by hand
        assert torque(TIP, (-nx, -ny), cfg.axis) > 0

    def test_circle_geometry_by_hand(self):
        c = circular_wheel_contact(55.0, STAIR, 260.0)
        # wheel touches the riser face: centre 55 mm behind it
        center = (c.point[0] + 55 * c.normal[0], c.point[1] + 55 * c.normal[1])
        assert center[0] == pytest.approx(-55.0)
        assert math.dist(center, TIP) == pytest.approx(55.0)
        assert math.dist(c.axis, center) == pytest.approx(260.0)
        assert c.axis[1] == pytest.approx(55.0)
        assert torque(TIP, c.normal, c.axis) <= 0

    def test_circle_too_small_to_reach_tip(self):
        assert circular_wheel_contact(30.0, STAIR, 260.0) is None
