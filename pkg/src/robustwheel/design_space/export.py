"""Writers for wheel profiles and design bounds."""

import csv
import io
import math

import numpy as np

from .geometry import envelope_radius, transverse_amplitude, transverse_frequency


def _fmt(v):
    return f"{v:.6f}"


def profile_svg_path(profile):
    """SVG path data for the closed rim, y flipped so +y points up on screen."""
    segs = profile.segments
    x0, y0 = segs[0].start_point
    parts = [f"M {_fmt(x0)} {_fmt(-y0)}"]
    for seg in segs:
        x, y = seg.end_point
        large = 1 if seg.end - seg.start > math.pi else 0
        # counter-clockwise in a y-up frame is sweep-flag 0 once y is negated
        parts.append(f"A {_fmt(seg.radius)} {_fmt(seg.radius)} 0 {large} 0 {_fmt(x)} {_fmt(-y)}")
    parts.append("Z")
    return " ".join(parts)


def profile_svg(profiles, margin=5.0):
    """Standalone SVG document with one closed path per profile, units mm."""
    if not isinstance(profiles, (list, tuple)):
        profiles = [profiles]
    extent = max(p.wheel.outer_radius for p in profiles) + margin
    size = 2 * extent
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(size)}mm" '
        f'height="{_fmt(size)}mm" viewBox="{_fmt(-extent)} {_fmt(-extent)} '
        f'{_fmt(size)} {_fmt(size)}">',
    ]
    for p in profiles:
        w = p.wheel
        pid = f"wheel_rp{w.parent_radius:g}_rc{w.child_radius:g}_nc{w.child_count}"
        lines.append(
            f'  <path id="{pid}" d="{profile_svg_path(p)}" '
            'fill="none" stroke="black" stroke-width="0.2"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def profile_polyline(profile, resolution_deg=0.1):
    """Rim points sampled every ``resolution_deg`` of polar angle, shape (m, 2)."""
    if not resolution_deg > 0:
        raise ValueError(f"resolution must be positive, got {resolution_deg}")
    count = int(round(360.0 / resolution_deg))
    angles = np.arange(count) * (2.0 * math.pi / count)
    r = envelope_radius(profile.wheel, angles - profile.phase)
    return np.column_stack([r * np.cos(angles), r * np.sin(angles)])


def profile_polyline_csv(profile, resolution_deg=0.1):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x_mm", "y_mm"])
    for x, y in profile_polyline(profile, resolution_deg):
        writer.writerow([_fmt(x), _fmt(y)])
    return buf.getvalue()


def wheel_metrics_line(wheel):
    return (
        f"r_p={wheel.parent_radius:g} mm r_c={wheel.child_radius:g} mm n_c={wheel.child_count} "
        f"amplitude={transverse_amplitude(wheel):.4f} mm "
        f"frequency={transverse_frequency(wheel)}"
    )


def bounds_csv(bounds):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["quantity", "min", "max"])
    for name, lo, hi in bounds.as_rows():
        if name == "child_count":
            writer.writerow([name, int(lo), int(hi)])
        else:
            writer.writerow([name, _fmt(lo), _fmt(hi)])
    return buf.getvalue()


def bounds_text(bounds, published=None):
    """Human-readable bounds block; flags differences from ``published``."""
    lines = [
        "Design bounds",
        f"  parent radius : {bounds.rp_min:.3f} mm <= r_p <= {bounds.rp_max:.3f} mm",
        f"  module length : {bounds.lm_min:.2f} mm <= l_m <= {bounds.lm_max:.2f} mm",
        f"  child circles : {bounds.nc_min} <= n_c <= {bounds.nc_max}",
    ]
    inputs = bounds.inputs
    if inputs:
        lines.append(
            f"  inputs: r_c={inputs['r_c']:g} mm, o_max={inputs['o_max']:g} mm, "
            f"riser_min={inputs['riser_min']:g} mm, n_c evaluated at r_p={inputs['rp_level']:g} mm "
            f"with l_m={inputs['module_length']:g} mm"
        )
    for label, side, ours, theirs in bounds.deviations(published or {}):
        lines.append(
            f"  DEVIATION {label} {side}: computed {ours:g}, published {theirs:g} "
            f"(difference {ours - theirs:+.2f})"
        )
    return "\n".join(lines) + "\n"
