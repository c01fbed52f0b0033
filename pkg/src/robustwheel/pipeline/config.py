"""Pipeline configuration: a nested YAML document, validated in one pass.

Every problem found is reported together; unknown keys are errors so typos
do not silently fall back to defaults.
"""

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..design_space.bounds import MODULE_LENGTH_BOUNDS
from ..design_space.geometry import DEFAULT_CHILD_RADIUS
from ..design_space.stairs import (
    DEFAULT_CLEARANCE,
    DEFAULT_STAIRS,
    DEFAULT_STIFFNESS,
    IBC_MAX_OVERHANG,
    IBC_MIN_RISER,
    ModuleGeometry,
    StairSpec,
)
from ..exceptions import IoError, ParseError, ValidationError
from ..gra import AttributeSpec, parse_direction
from ..taguchi import Factor

GEOMETRY_ROLES = ("module_length", "parent_radius", "child_count")
ATTRIBUTE_SOURCES = ("sn", "amplitude", "frequency")
OUTPUT_FORMATS = ("csv", "text", "svg", "polyline")

_TOP_KEYS = {
    "factors", "noise", "attributes", "zeta", "f_critical", "wheel", "bounds", "module",
    "output", "confirmation", "seed",
}
_FACTOR_KEYS = {"name", "role", "unit", "levels"}
_STAIR_KEYS = {"riser", "tread", "overhang", "nosing_thickness"}
_NOISE_KEYS = {"stairs", "friction_coefficient"}
_ATTR_KEYS = {"name", "direction", "source", "weight"}
_WHEEL_KEYS = {"child_radius"}
_BOUNDS_KEYS = {"o_max", "riser_min", "module_length", "published"}
_PUBLISHED_KEYS = {"parent_radius", "module_length", "child_count"}
_MODULE_KEYS = {"clearance", "stiffness"}
_OUTPUT_KEYS = {"directory", "formats", "polyline_resolution_deg"}
_CONFIRM_KEYS = {"sn_ratio", "responses", "grade"}


@dataclass(frozen=True)
class PipelineConfig:
    factors: tuple
    roles: tuple
    stairs: tuple = DEFAULT_STAIRS
    attributes: tuple = ()
    weights: tuple = None
    zeta: float = 0.5
    f_critical: float = 10.0
    child_radius: float = DEFAULT_CHILD_RADIUS
    o_max: float = IBC_MAX_OVERHANG
    riser_min: float = IBC_MIN_RISER
    lm_bounds: tuple = MODULE_LENGTH_BOUNDS
    published_bounds: dict = field(default_factory=dict)
    module: ModuleGeometry = None
    output_dir: str = "out"
    formats: tuple = OUTPUT_FORMATS
    polyline_resolution_deg: float = 0.1
    confirmation: dict = field(default_factory=dict)
    seed: int = 0
    source: str = None

    def factor_for(self, role):
        if role not in self.roles:
            raise ValidationError(f"no factor has role '{role}'",
                                  [f"defined roles: {list(self.roles)}"])
        return self.roles.index(role)

    def require_geometry_roles(self):
        missing = [r for r in GEOMETRY_ROLES if r not in self.roles]
        if missing:
            raise ValidationError("configuration lacks factors needed for wheel geometry",
                                  [f"missing role '{r}'" for r in missing])


def default_attributes():
    return (
        AttributeSpec("power", "larger-is-better", "sn"),
        AttributeSpec("amplitude", "smaller-is-better", "amplitude"),
        AttributeSpec("frequency", "smaller-is-better", "frequency"),
    )


class _Checker:
    def __init__(self):
        self.problems = []

    def keys(self, obj, allowed, where):
        if not isinstance(obj, dict):
            self.problems.append(f"{where}: expected a mapping, got {type(obj).__name__}")
            return False
        for k in obj:
            if k not in allowed:
                self.problems.append(f"{where}: unknown key '{k}'")
        return True

    def number(self, obj, key, where, default=None, positive=False, nonneg=False):
        if key not in obj:
            if default is None:
                self.problems.append(f"{where}: missing '{key}'")
            return default
        v = obj[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            self.problems.append(f"{where}.{key}: expected a number, got {v!r}")
            return default
        if positive and not v > 0:
            self.problems.append(f"{where}.{key}: must be > 0, got {v}")
        if nonneg and not v >= 0:
            self.problems.append(f"{where}.{key}: must be >= 0, got {v}")
        return float(v)

    def numbers(self, obj, key, where, length=None):
        v = obj.get(key)
        if not isinstance(v, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in v
        ):
            self.problems.append(f"{where}.{key}: expected a list of numbers, got {v!r}")
            return None
        if length is not None and len(v) != length:
            self.problems.append(f"{where}.{key}: expected {length} values, got {len(v)}")
            return None
        return [float(x) for x in v]


def parse_config(text, source=None):
    """Validate a YAML document and build a :class:`PipelineConfig`."""
    if not text.strip():
        raise ParseError("configuration is empty", line=1)
    try:
        raw = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ParseError(f"malformed configuration: {exc.problem}",
                         line=mark.line + 1 if mark else None) from exc
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed configuration: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("configuration must be a mapping of sections", line=1)

    c = _Checker()
    c.keys(raw, _TOP_KEYS, "config")

    factors, roles = [], []
    raw_factors = raw.get("factors")
    if not isinstance(raw_factors, list) or not raw_factors:
        c.problems.append("factors: expected a non-empty list")
        raw_factors = []
    for i, rf in enumerate(raw_factors):
        where = f"factors[{i}]"
        if not c.keys(rf, _FACTOR_KEYS, where):
            continue
        name = rf.get("name")
        if not isinstance(name, str) or not name:
            c.problems.append(f"{where}.name: expected a non-empty string")
            continue
        levels = c.numbers(rf, "levels", where)
        if levels is None:
            continue
        if len(levels) != 3:
            c.problems.append(f"{where}.levels: L9 needs exactly 3 levels, got {len(levels)}")
            continue
        if len(set(levels)) != 3:
            c.problems.append(f"{where}.levels: levels must be distinct, got {levels}")
            continue
        role = rf.get("role")
        if role is not None and role not in GEOMETRY_ROLES:
            c.problems.append(f"{where}.role: must be one of {list(GEOMETRY_ROLES)}, got {role!r}")
        if role is not None and role in roles:
            c.problems.append(f"{where}.role: '{role}' assigned twice")
        if role == "child_count" and any(v != int(v) or v < 3 for v in levels):
            c.problems.append(f"{where}.levels: child counts must be integers >= 3")
        roles.append(role)
        factors.append(Factor(name, tuple(levels), str(rf.get("unit", "")), "control"))
    names = [f.name for f in factors]
    if len(set(names)) != len(names):
        c.problems.append("factors: names must be unique")

    noise = raw.get("noise", {})
    stairs = DEFAULT_STAIRS
    friction = 0.0
    if c.keys(noise, _NOISE_KEYS, "noise"):
        friction = c.number(noise, "friction_coefficient", "noise", default=0.0, nonneg=True)
        if "stairs" in noise:
            built = []
            if not isinstance(noise["stairs"], list) or not noise["stairs"]:
                c.problems.append("noise.stairs: expected a non-empty list")
            else:
                for i, rs in enumerate(noise["stairs"]):
                    where = f"noise.stairs[{i}]"
                    if not c.keys(rs, _STAIR_KEYS, where):
                        continue
                    before = len(c.problems)
                    riser = c.number(rs, "riser", where, positive=True)
                    tread = c.number(rs, "tread", where, positive=True)
                    over = c.number(rs, "overhang", where, default=IBC_MAX_OVERHANG, nonneg=True)
                    nose = c.number(rs, "nosing_thickness", where, default=25.4, nonneg=True)
                    if len(c.problems) > before:
                        continue
                    try:
                        built.append(StairSpec(riser, tread, over, friction, nose))
                    except ValidationError as exc:
                        c.problems.extend(f"{where}: {v}" for v in exc.violations)
            stairs = tuple(built)
        elif friction:
            stairs = tuple(
                StairSpec(s.riser, s.tread, s.overhang, friction, s.nosing_thickness)
                for s in DEFAULT_STAIRS
            )

    attributes, weights = [], []
    raw_attrs = raw.get("attributes")
    if raw_attrs is None:
        attributes = list(default_attributes())
    elif not isinstance(raw_attrs, list) or not raw_attrs:
        c.problems.append("attributes: expected a non-empty list")
    else:
        for i, ra in enumerate(raw_attrs):
            where = f"attributes[{i}]"
            if not c.keys(ra, _ATTR_KEYS, where):
                continue
            name = ra.get("name")
            if not isinstance(name, str) or not name:
                c.problems.append(f"{where}.name: expected a non-empty string")
                continue
            source = ra.get("source", name)
            if source not in ATTRIBUTE_SOURCES:
                c.problems.append(
                    f"{where}.source: must be one of {list(ATTRIBUTE_SOURCES)}, got {source!r}"
                )
                continue
            if "direction" not in ra:
                c.problems.append(f"{where}: missing 'direction'")
                continue
            try:
                parse_direction(ra["direction"])
            except ValidationError as exc:
                c.problems.append(f"{where}.direction: {exc.violations[0] if exc.violations else exc}")
                continue
            attributes.append(AttributeSpec(name, ra["direction"], source))
            if "weight" in ra:
                weights.append(c.number(ra, "weight", where, nonneg=True))
    if weights and len(weights) != len(attributes):
        c.problems.append("attributes: give a weight for every attribute or for none")
    elif weights and None not in weights and abs(sum(weights) - 1.0) > 1e-9:
        c.problems.append(f"attributes: weights must sum to 1, got {sum(weights)}")

    zeta = c.number(raw, "zeta", "config", default=0.5, positive=True)
    f_critical = c.number(raw, "f_critical", "config", default=10.0, nonneg=True)

    wheel = raw.get("wheel", {})
    child_radius = DEFAULT_CHILD_RADIUS
    if c.keys(wheel, _WHEEL_KEYS, "wheel"):
        child_radius = c.number(wheel, "child_radius", "wheel", default=DEFAULT_CHILD_RADIUS,
                                positive=True)

    bounds = raw.get("bounds", {})
    o_max, riser_min, lm_bounds, published = IBC_MAX_OVERHANG, IBC_MIN_RISER, MODULE_LENGTH_BOUNDS, {}
    if c.keys(bounds, _BOUNDS_KEYS, "bounds"):
        o_max = c.number(bounds, "o_max", "bounds", default=IBC_MAX_OVERHANG, positive=True)
        riser_min = c.number(bounds, "riser_min", "bounds", default=IBC_MIN_RISER, positive=True)
        if "module_length" in bounds:
            lm = c.numbers(bounds, "module_length", "bounds", length=2)
            if lm is not None:
                if lm[0] > lm[1]:
                    c.problems.append("bounds.module_length: min exceeds max")
                lm_bounds = tuple(lm)
        pub = bounds.get("published", {})
        if c.keys(pub, _PUBLISHED_KEYS, "bounds.published"):
            short = {"parent_radius": "rp", "module_length": "lm", "child_count": "nc"}
            for k in pub:
                if k in short:
                    pair = c.numbers(pub, k, "bounds.published", length=2)
                    if pair is not None:
                        published[short[k]] = tuple(pair)

    mod = raw.get("module", {})
    module = None
    if c.keys(mod, _MODULE_KEYS, "module"):
        clearance = c.number(mod, "clearance", "module", default=DEFAULT_CLEARANCE, nonneg=True)
        stiffness = DEFAULT_STIFFNESS
        if "stiffness" in mod:
            s = c.numbers(mod, "stiffness", "module", length=4)
            if s is not None:
                if any(v < 0 for v in s):
                    c.problems.append("module.stiffness: constants must be nonnegative")
                stiffness = tuple(s)
        if lm_bounds[1] > 0:
            try:
                module = ModuleGeometry(lm_bounds[1], clearance, stiffness)
            except ValidationError as exc:
                c.problems.extend(exc.violations)

    out = raw.get("output", {})
    output_dir, formats, resolution = "out", OUTPUT_FORMATS, 0.1
    if c.keys(out, _OUTPUT_KEYS, "output"):
        output_dir = out.get("directory", "out")
        if not isinstance(output_dir, str):
            c.problems.append("output.directory: expected a string")
        if "formats" in out:
            fm = out["formats"]
            if not isinstance(fm, list):
                c.problems.append("output.formats: expected a list")
            else:
                bad = [f for f in fm if f not in OUTPUT_FORMATS]
                if bad:
                    c.problems.append(f"output.formats: unknown {bad}; allowed {list(OUTPUT_FORMATS)}")
                formats = tuple(fm)
        resolution = c.number(out, "polyline_resolution_deg", "output", default=0.1, positive=True)

    confirmation = raw.get("confirmation", {})
    if c.keys(confirmation, _CONFIRM_KEYS, "confirmation"):
        if len(confirmation) > 1:
            c.problems.append("confirmation: give only one of sn_ratio, responses, grade")
        for k in ("sn_ratio", "grade"):
            if k in confirmation:
                c.number(confirmation, k, "confirmation")
        if "responses" in confirmation:
            c.numbers(confirmation, "responses", "confirmation")

    seed = raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        c.problems.append(f"config.seed: expected an integer, got {seed!r}")

    if c.problems:
        raise ValidationError("invalid configuration" + (f" in {source}" if source else ""),
                              c.problems)
    return PipelineConfig(
        factors=tuple(factors),
        roles=tuple(roles),
        stairs=stairs,
        attributes=tuple(attributes),
        weights=tuple(weights) if weights else None,
        zeta=zeta,
        f_critical=f_critical,
        child_radius=child_radius,
        o_max=o_max,
        riser_min=riser_min,
        lm_bounds=tuple(lm_bounds),
        published_bounds=published,
        module=module,
        output_dir=output_dir,
        formats=formats,
        polyline_resolution_deg=resolution,
        confirmation=dict(confirmation),
        seed=seed,
        source=source,
    )


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read configuration ({exc.strerror})", path) from exc
    return parse_config(text, str(path))
