"""End-to-end analysis and report files."""

import csv
import io
import json
import logging
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..anova import anova_from_grades, confirm, predict_grade, significant_factors
from ..design_space.bounds import design_bounds
from ..design_space.export import (
    bounds_csv,
    bounds_text,
    profile_polyline_csv,
    profile_svg,
)
from ..design_space.geometry import (
    WheelSpec,
    transverse_amplitude,
    transverse_frequency,
    wheel_profile,
)
from ..exceptions import IoError, ShapeMismatch
from ..gra import GreyRelationalAnalysis, influence
from ..taguchi import ResponseMatrix, build_l9, snr_column, snr_smaller_better

log = logging.getLogger(__name__)


@dataclass
class Report:
    config: object
    plan: object
    responses: ResponseMatrix
    sn: np.ndarray
    wheels: list
    attributes: np.ndarray
    gra: GreyRelationalAnalysis
    grc: np.ndarray
    grades: np.ndarray
    ranks: np.ndarray
    influence: object
    anova: object
    significant: tuple
    prediction: object = None
    confirmation: object = None
    bounds: object = None
    warnings: list = field(default_factory=list)

    @property
    def optimal_setting(self):
        return self.influence.optimal_values

    @property
    def attribute_names(self):
        return [a.name for a in self.config.attributes]

    def attribute_row(self, values):
        """Attribute vector for a setting given as physical factor values."""
        cfg = self.config
        r_p = values[cfg.factor_for("parent_radius")]
        n_c = int(values[cfg.factor_for("child_count")])
        wheel = WheelSpec(r_p, cfg.child_radius, n_c)
        return wheel, {
            "amplitude": transverse_amplitude(wheel),
            "frequency": float(transverse_frequency(wheel)),
        }


def _attribute_table(config, sn, wheels):
    cols = []
    for spec in config.attributes:
        if spec.source == "sn":
            cols.append(sn)
        elif spec.source == "amplitude":
            cols.append(np.array([transverse_amplitude(w) for w in wheels]))
        else:
            cols.append(np.array([float(transverse_frequency(w)) for w in wheels]))
    return np.column_stack(cols)


def run_analysis(config, responses, with_bounds=True):
    """Array -> S/N -> attributes -> grey grades -> influence -> ANOVA -> prediction."""
    config.require_geometry_roles()
    plan = build_l9(config.factors)
    if not isinstance(responses, ResponseMatrix):
        responses = ResponseMatrix(responses)
    if responses.n_runs != plan.n_runs:
        raise ShapeMismatch(f"{responses.n_runs} response rows for {plan.n_runs} runs")
    notes = []
    sn = snr_column(plan, responses)
    values = plan.values()
    j_rp = config.factor_for("parent_radius")
    j_nc = config.factor_for("child_count")
    wheels = [WheelSpec(row[j_rp], config.child_radius, int(row[j_nc])) for row in values]
    table = _attribute_table(config, sn, wheels)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        gra = GreyRelationalAnalysis(list(config.attributes), config.zeta, config.weights)
        gra.fit(table)
        grc = gra.transform(table)
    notes.extend(str(w.message) for w in caught)
    grade = grc @ gra.weights_
    ranks = gra.rank(table)
    infl = influence(plan, grade)
    table_anova = anova_from_grades(plan, grade)
    significant = significant_factors(table_anova, config.f_critical)
    prediction = None
    if significant:
        prediction = predict_grade(infl, significant)
    else:
        notes.append(f"no factor reaches F >= {config.f_critical:g}; no grade prediction")

    report = Report(config, plan, responses, sn, wheels, table, gra, grc, grade, ranks, infl,
                    table_anova, significant, prediction, warnings=notes)
    if prediction is not None and config.confirmation:
        report.confirmation = confirmation_from_config(report)
    if with_bounds:
        report.bounds = design_bounds(
            config.child_radius, config.o_max, config.riser_min, config.lm_bounds,
            config.stairs, config.module, rp_level=max(config.factors[j_rp].levels),
        )
    for note in notes:
        log.warning(note)
    return report


def grade_setting(report, values, sn_ratio):
    """Grade an extra run at ``values`` against the fitted array ranges."""
    _, derived = report.attribute_row(values)
    row = []
    for spec in report.config.attributes:
        row.append(sn_ratio if spec.source == "sn" else derived[spec.source])
    return float(report.gra.score_samples(np.array([row]))[0])


def confirmation_from_config(report):
    conf = report.config.confirmation
    setting = report.optimal_setting
    if "grade" in conf:
        observed = float(conf["grade"])
    else:
        sn = conf["sn_ratio"] if "sn_ratio" in conf else snr_smaller_better(conf["responses"])
        observed = grade_setting(report, setting, float(sn))
    return confirm(report.prediction, observed, float(report.grades.max()), setting)


# ---------------------------------------------------------------- writers


def _f6(v):
    return f"{float(v):.6f}"


def grey_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["run", *[f"grc_{n}" for n in report.attribute_names], "grade", "rank"])
    for i in range(report.plan.n_runs):
        w.writerow([i + 1, *[_f6(v) for v in report.grc[i]], _f6(report.grades[i]),
                    int(report.ranks[i])])
    return buf.getvalue()


def influence_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["factor", "level", "value", "avg_grade", "optimal_flag"])
    infl = report.influence
    for j, f in enumerate(infl.factors):
        for lv in range(1, len(f.levels) + 1):
            w.writerow([f.name, lv, _f6(f.value(lv)), _f6(infl.level_means[j, lv - 1]),
                        int(infl.optimal_levels[j] == lv)])
    return buf.getvalue()


def prediction_json(report):
    p = report.prediction
    data = {
        "predicted": p.predicted if p else None,
        "mean_grade": p.mean_grade if p else None,
        "significant": list(p.significant) if p else [],
        "best_averages": dict(p.best_averages) if p else {},
        "optimal_setting": list(report.optimal_setting),
        "best_run_grade": float(report.grades.max()),
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def summary_text(report):
    plan, cfg = report.plan, report.config
    names = report.attribute_names
    out = ["Orthogonal array results", ""]
    head = ["run", *plan.symbols]
    head += [f"p{k}" for k in range(1, report.responses.n_replicates + 1)]
    head += ["S/N", "amp", "freq", *[f"grc_{n[:5]}" for n in names], "grade", "rank"]
    out.append("  ".join(f"{h:>9}" for h in head))
    amp = [transverse_amplitude(w) for w in report.wheels]
    for i in range(plan.n_runs):
        cells = [str(i + 1), *[str(v) for v in plan.runs[i]]]
        cells += [f"{v:.2f}" for v in report.responses.values[i]]
        cells += [f"{report.sn[i]:.2f}", f"{amp[i]:.2f}", str(report.wheels[i].child_count)]
        cells += [f"{v:.2f}" for v in report.grc[i]]
        cells += [f"{report.grades[i]:.2f}", str(report.ranks[i])]
        out.append("  ".join(f"{c:>9}" for c in cells))
    out += ["", "Average grade by factor level"]
    infl = report.influence
    for j, f in enumerate(infl.factors):
        cells = []
        for lv in range(1, len(f.levels) + 1):
            star = "*" if infl.optimal_levels[j] == lv else " "
            cells.append(f"{infl.level_means[j, lv - 1]:.2f}{star}")
        out.append(f"  {f.name:<28}" + "  ".join(f"{c:>7}" for c in cells))
    setting = ", ".join(
        f"{f.name} = {v:g}{' ' + f.unit if f.unit else ''}"
        for f, v in zip(infl.factors, infl.optimal_values)
    )
    out += [f"  optimal setting: {setting}", f"  mean grade: {infl.mean_grade:.2f}", ""]
    out.append("Analysis of variance")
    a = report.anova
    out.append(f"  {'':<28}{'SS':>10}{'F':>10}{'contrib %':>12}")
    for j, name in enumerate(a.factor_names):
        out.append(f"  {name:<28}{a.ss[j]:>10.4f}{a.f[j]:>10.2f}{a.contribution[j]:>12.2f}")
    out.append(f"  {'Error':<28}{a.error_ss:>10.4f}{'':>10}{a.error_contribution:>12.2f}")
    sig = ", ".join(report.significant) if report.significant else "none"
    out += [f"  significant at F >= {cfg.f_critical:g}: {sig}", ""]
    if report.prediction is not None:
        out.append(f"Predicted grade at the optimal setting: {report.prediction.predicted:.2f}")
    if report.confirmation is not None:
        c = report.confirmation
        out.append(f"Confirmation grade: {c.observed:.2f} (gap {c.gap:+.2f})")
    if report.bounds is not None:
        out += ["", bounds_text(report.bounds, cfg.published_bounds).rstrip()]
    if report.warnings:
        out += ["", "Warnings"] + [f"  {w}" for w in report.warnings]
    return "\n".join(out) + "\n"


def _write(path, text):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write report file ({exc.strerror})", path) from exc
    return path


def wheel_file_stem(wheel):
    return f"wheel_rp{wheel.parent_radius:g}_rc{wheel.child_radius:g}_nc{wheel.child_count}"


def distinct_wheels(report):
    seen = {}
    for w in report.wheels:
        seen.setdefault((w.parent_radius, w.child_radius, w.child_count), w)
    return list(seen.values())


def emit_report(report, formats=None, out_dir=None):
    """Write the requested report files; the summary is always written."""
    cfg = report.config
    formats = cfg.formats if formats is None else tuple(formats)
    out = Path(cfg.output_dir if out_dir is None else out_dir)
    written = [_write(out / "summary.txt", summary_text(report))]
    if "csv" in formats:
        written.append(_write(out / "plan.csv", report.plan.to_csv()))
        written.append(_write(out / "grey.csv", grey_csv(report)))
        written.append(_write(out / "influence.csv", influence_csv(report)))
        written.append(_write(out / "anova.csv", report.anova.to_csv()))
        if report.bounds is not None:
            written.append(_write(out / "bounds.csv", bounds_csv(report.bounds)))
    if "text" in formats:
        if report.confirmation is not None:
            written.append(_write(out / "confirmation.txt", report.confirmation.to_text()))
        if report.bounds is not None:
            written.append(_write(out / "bounds.txt",
                                  bounds_text(report.bounds, cfg.published_bounds)))
        written.append(_write(out / "prediction.json", prediction_json(report)))
    for wheel in distinct_wheels(report) if {"svg", "polyline"} & set(formats) else []:
        profile = wheel_profile(wheel)
        stem = wheel_file_stem(wheel)
        if "svg" in formats:
            written.append(_write(out / "wheels" / f"{stem}.svg", profile_svg(profile)))
        if "polyline" in formats:
            written.append(_write(out / "wheels" / f"{stem}.csv",
                                  profile_polyline_csv(profile, cfg.polyline_resolution_deg)))
    return written
