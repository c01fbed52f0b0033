"""Command-line entry point: ``robustwheel {design,oa,analyze,wheel,confirm}``."""

import argparse
import json
import logging
import sys
from pathlib import Path

from ..anova import confirm
from ..design_space.bounds import design_bounds
from ..design_space.export import (
    bounds_csv,
    bounds_text,
    profile_polyline_csv,
    profile_svg,
    wheel_metrics_line,
)
from ..design_space.geometry import WheelSpec, wheel_profile
from ..exceptions import IoError, RobustWheelError, ValidationError
from ..taguchi import build_l9, read_plan_csv
from .config import load_config
from .ingest import ingest_responses
from .report import emit_report, run_analysis, wheel_file_stem

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_USAGE = 64

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def resolve_input(name):
    """Use ``name`` as given, falling back to the files shipped with the package."""
    path = Path(name)
    if path.exists() or path.is_absolute():
        return path
    shipped = DATA_DIR / path.name
    return shipped if shipped.exists() else path


def _write_or_print(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write output ({exc.strerror})", out) from exc


def cmd_design(args):
    cfg = load_config(resolve_input(args.config))
    rp_level = None
    if "parent_radius" in cfg.roles:
        rp_level = max(cfg.factors[cfg.factor_for("parent_radius")].levels)
    bounds = design_bounds(cfg.child_radius, cfg.o_max, cfg.riser_min, cfg.lm_bounds,
                           cfg.stairs, cfg.module, rp_level=rp_level)
    text = bounds_csv(bounds) if args.csv else bounds_text(bounds, cfg.published_bounds)
    _write_or_print(text, args.out)


def cmd_oa(args):
    cfg = load_config(resolve_input(args.config))
    _write_or_print(build_l9(cfg.factors).to_csv(), args.out)


def _read_text(path, what):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {what} ({exc.strerror})", path) from exc


def check_plan_file(path, plan):
    """A previously emitted plan must match the array the config produces."""
    stored = read_plan_csv(_read_text(path, "plan"), plan.factors)
    if stored.runs.shape != plan.runs.shape or (stored.runs != plan.runs).any():
        raise ValidationError(f"{path}: plan does not match the configured L9 array")
    return stored


def cmd_analyze(args):
    cfg = load_config(resolve_input(args.config))
    plan = build_l9(cfg.factors)
    if args.plan:
        check_plan_file(args.plan, plan)
    responses = ingest_responses(resolve_input(args.responses), plan)
    report = run_analysis(cfg, responses, with_bounds=not args.no_bounds)
    formats = cfg.formats if args.formats is None else [f for f in args.formats.split(",") if f]
    written = emit_report(report, formats, args.out_dir)
    setting = ", ".join(f"{v:g}" for v in report.optimal_setting)
    print(f"optimal setting: ({setting})")
    if report.prediction is not None:
        print(f"predicted grade: {report.prediction.predicted:.6f}")
    print(f"wrote {len(written)} files to {written[0].parent}")


def cmd_wheel(args):
    wheel = WheelSpec(args.rp, args.rc, args.nc)
    profile = wheel_profile(wheel)
    print(wheel_metrics_line(wheel))
    if args.out_dir:
        out = Path(args.out_dir)
        stem = wheel_file_stem(wheel)
        _write_or_print(profile_svg(profile), out / f"{stem}.svg")
        _write_or_print(profile_polyline_csv(profile, args.resolution), out / f"{stem}.csv")


def cmd_confirm(args):
    path = Path(args.prediction)
    try:
        stored = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoError(f"cannot read stored prediction ({exc.strerror})", path) from exc
    except json.JSONDecodeError as exc:
        raise IoError(f"stored prediction is not valid JSON ({exc.msg})", path) from exc
    if stored.get("predicted") is None:
        raise RobustWheelError("stored analysis has no grade prediction")
    report = confirm(stored["predicted"], args.grade, stored.get("best_run_grade"),
                     stored.get("optimal_setting", ()))
    sys.stdout.write(report.to_text())


def build_parser():
    p = _Parser(prog="robustwheel", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("design", help="print the control-factor bounds")
    d.add_argument("--config", default="paper.config")
    d.add_argument("--csv", action="store_true", help="emit CSV instead of text")
    d.add_argument("--out")
    d.set_defaults(func=cmd_design)

    o = sub.add_parser("oa", help="emit the L9 experiment plan as CSV")
    o.add_argument("--config", default="paper.config")
    o.add_argument("--out")
    o.set_defaults(func=cmd_oa)

    a = sub.add_parser("analyze", help="run the full analysis and write reports")
    a.add_argument("--config", default="paper.config")
    a.add_argument("--responses", default="paper_table2.csv")
    a.add_argument("--plan", help="plan CSV from `oa`; checked against the config")
    a.add_argument("--out-dir")
    a.add_argument("--formats", help="comma-separated subset of csv,text,svg,polyline")
    a.add_argument("--no-bounds", action="store_true", help="skip the child-count search")
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("wheel", help="profile and metrics for one wheel")
    w.add_argument("--rp", type=float, required=True)
    w.add_argument("--rc", type=float, default=10.0)
    w.add_argument("--nc", type=int, required=True)
    w.add_argument("--resolution", type=float, default=0.1, help="polyline step in degrees")
    w.add_argument("--out-dir")
    w.set_defaults(func=cmd_wheel)

    c = sub.add_parser("confirm", help="compare an observed grade with the stored prediction")
    c.add_argument("--grade", type=float, required=True)
    c.add_argument("--prediction", default="out/prediction.json")
    c.set_defaults(func=cmd_confirm)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except IoError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO
    except RobustWheelError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
