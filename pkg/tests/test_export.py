import csv
import io
import math
import re

import numpy as np
import pytest

from robustwheel.design_space import (
    WheelSpec,
    profile_polyline,
    profile_polyline_csv,
    profile_svg,
    profile_svg_path,
    wheel_metrics_line,
    wheel_profile,
)


def svg_arc_center(x1, y1, rx, ry, phi, large_arc, sweep, x2, y2):
    """Endpoint-to-centre conversion from the SVG implementation notes."""
    cphi, sphi = math.cos(phi), math.sin(phi)
    dx, dy = (x1 - x2) / 2, (y1 - y2) / 2
    x1p = cphi * dx + sphi * dy
    y1p = -sphi * dx + cphi * dy
    num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p
    den = rx * rx * y1p * y1p + ry * ry * x1p * x1p
    coef = math.sqrt(max(num, 0.0) / den)
    if large_arc == sweep:
        coef = -coef
    cxp, cyp = coef * rx * y1p / ry, -coef * ry * x1p / rx
    cx = cphi * cxp - sphi * cyp + (x1 + x2) / 2
    cy = sphi * cxp + cphi * cyp + (y1 + y2) / 2

    def angle(ux, uy, vx, vy):
        a = math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
        return a

    theta1 = angle(1, 0, (x1p - cxp) / rx, (y1p - cyp) / ry)
    dtheta = angle((x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx, (-y1p - cyp) / ry)
    if not sweep and dtheta > 0:
        dtheta -= 2 * math.pi
    elif sweep and dtheta < 0:
        dtheta += 2 * math.pi
    return (cx, cy), theta1, dtheta


def parse_path(d):
    tokens = re.findall(r"[MAZ]|-?\d+\.\d+|-?\d+", d)
    assert tokens[0] == "M"
    pos = (float(tokens[1]), float(tokens[2]))
    arcs, i = [], 3
    while tokens[i] != "Z":
        assert tokens[i] == "A"
        rx, ry, rot, large, sweep, x, y = (float(t) for t in tokens[i + 1:i + 8])
        arcs.append((pos, rx, ry, rot, int(large), int(sweep), (x, y)))
        pos = (x, y)
        i += 8
    return arcs


@pytest.mark.parametrize("spec", [(45, 10, 16), (40, 10, 20), (50, 10, 16), (30, 15, 8)])
def test_svg_arcs_reconstruct_child_circles(spec):
    wheel = WheelSpec(*spec)
    profile = wheel_profile(wheel, phase=0.3)
    arcs = parse_path(profile_svg_path(profile))
    assert len(arcs) == wheel.child_count
    for seg, (p1, rx, ry, rot, large, sweep, p2) in zip(profile.segments, arcs):
        center, theta1, dtheta = svg_arc_center(*p1, rx, ry, math.radians(rot), large, sweep, *p2)
        # screen coordinates have y flipped
        assert center[0] == pytest.approx(seg.center[0], abs=1e-5)
        assert -center[1] == pytest.approx(seg.center[1], abs=1e-5)
        # traced the outer (exposed) side: the midpoint is the far point
        mid = theta1 + dtheta / 2
        mx, my = center[0] + rx * math.cos(mid), -(center[1] + ry * math.sin(mid))
        assert math.hypot(mx, my) == pytest.approx(wheel.parent_radius + wheel.child_radius,
                                                   abs=1e-5)
        assert abs(dtheta) == pytest.approx(seg.end - seg.start, abs=1e-5)


def test_svg_document():
    doc = profile_svg(wheel_profile(WheelSpec(45, 10, 16)))
    assert doc.startswith("<?xml")
    assert 'id="wheel_rp45_rc10_nc16"' in doc
    assert doc.count("<path") == 1
    assert 'width="120.000000mm"' in doc


class TestPolyline:
    def test_resolution(self):
        pts = profile_polyline(wheel_profile(WheelSpec(45, 10, 16)), 0.1)
        assert pts.shape == (3600, 2)
        ang = np.degrees(np.arctan2(pts[:, 1], pts[:, 0])) % 360
        assert np.allclose(np.diff(ang[:1800]), 0.1)

    def test_points_on_outer_envelope(self):
        wheel = WheelSpec(45, 10, 16)
        p = wheel_profile(wheel)
        pts = profile_polyline(p, 1.0)
        centers = np.array([s.center for s in p.segments])
        d = np.hypot(pts[:, None, 0] - centers[None, :, 0], pts[:, None, 1] - centers[None, :, 1])
        assert np.all(np.abs(d.min(axis=1) - 10) < 1e-9)

    def test_csv(self):
        text = profile_polyline_csv(wheel_profile(WheelSpec(45, 10, 16)), 1.0)
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["x_mm", "y_mm"]
        assert len(rows) == 361
        assert rows[1] == ["55.000000", "0.000000"]

    def test_bad_resolution(self):
        with pytest.raises(ValueError):
            profile_polyline(wheel_profile(WheelSpec(45, 10, 16)), 0)


def test_metrics_line():
    line = wheel_metrics_line(WheelSpec(45, 10, 16))
    assert "amplitude=0.8647 mm" in line
    assert line.endswith("frequency=16")
