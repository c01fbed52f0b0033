"""Variance decomposition of grades over the L9 factors and grade prediction."""

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_matrix, check_vector
from .exceptions import EmptySignificantSet, NegativeErrorSS, ShapeMismatch, ValidationError
from .gra import InfluenceTable, influence
from .taguchi import ExperimentPlan, Factor

DEFAULT_F_CRITICAL = 10.0


@dataclass(frozen=True)
class AnovaTable:
    factor_names: tuple
    ss: np.ndarray = field(repr=False)
    df: np.ndarray = field(repr=False)
    error_ss: float
    error_df: int
    total_ss: float

    @property
    def ms(self):
        return self.ss / self.df

    @property
    def error_ms(self):
        return self.error_ss / self.error_df if self.error_df > 0 else float("nan")

    @property
    def f(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.error_ms > 0:
                return self.ms / self.error_ms
            return np.where(self.ms > 0, np.inf, np.nan)

    @property
    def degenerate(self):
        """Total variation is zero; contributions are reported as 0."""
        return self.total_ss <= 0

    @property
    def contribution(self):
        if self.degenerate:
            return np.zeros_like(self.ss)
        return 100.0 * self.ss / self.total_ss

    @property
    def error_contribution(self):
        return 0.0 if self.degenerate else 100.0 * self.error_ss / self.total_ss

    def row(self, name):
        j = self.factor_names.index(name)
        return {
            "ss": float(self.ss[j]),
            "df": int(self.df[j]),
            "ms": float(self.ms[j]),
            "f": float(self.f[j]),
            "contribution_pct": float(self.contribution[j]),
        }

    def to_csv(self, keys=None):
        keys = keys or self.factor_names
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["factor", "ss", "df", "ms", "f", "contribution_pct"])
        for key, j in zip(keys, range(len(self.factor_names))):
            w.writerow([key, _f6(self.ss[j]), int(self.df[j]), _f6(self.ms[j]),
                        _f6(self.f[j]), _f6(self.contribution[j])])
        w.writerow(["error", _f6(self.error_ss), self.error_df, _f6(self.error_ms), "",
                    _f6(self.error_contribution)])
        total_df = int(self.df.sum()) + self.error_df
        w.writerow(["total", _f6(self.total_ss), total_df, "", "",
                    _f6(0.0 if self.degenerate else 100.0)])
        return buf.getvalue()


def _f6(v):
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.6f}"


def anova_from_grades(plan, grades):
    """Sum-of-squares decomposition of the grades over the plan's factors.

    Factor SS is ``3 * sum((level mean - grand mean)**2)``; whatever the
    factors leave of the total is pooled as error.
    """
    g = check_vector(grades, "grades", plan.n_runs)
    grand = g.mean()
    total = float(np.sum((g - grand) ** 2))
    ss, df = [], []
    for j, f in enumerate(plan.factors):
        levels = range(1, len(f.levels) + 1)
        s = 0.0
        for lv in levels:
            mask = plan.runs[:, j] == lv
            s += mask.sum() * (g[mask].mean() - grand) ** 2
        ss.append(s)
        df.append(len(f.levels) - 1)
    ss = np.array(ss)
    df = np.array(df, dtype=int)
    error_ss = total - float(ss.sum())
    if error_ss < -1e-9:
        raise NegativeErrorSS(f"factor sums of squares exceed the total by {-error_ss:.3g}")
    error_ss = max(error_ss, 0.0)
    error_df = plan.n_runs - 1 - int(df.sum())
    if error_df < 0:
        raise ShapeMismatch("more factor degrees of freedom than runs")
    ss.setflags(write=False)
    df.setflags(write=False)
    names = tuple(f.name for f in plan.factors)
    return AnovaTable(names, ss, df, error_ss, error_df, total)


def significant_factors(table, f_critical=DEFAULT_F_CRITICAL):
    """Factors whose F statistic reaches ``f_critical``, in plan order."""
    f = table.f
    return tuple(name for name, v in zip(table.factor_names, f) if v >= f_critical)


@dataclass(frozen=True)
class Prediction:
    predicted: float
    mean_grade: float
    significant: tuple
    best_averages: dict


def predict_grade(influence, significant, mean_grade=None):
    """Additive estimate of the grade at the optimal setting.

    ``mean + sum(best_level_average - mean)`` over the significant factors.
    ``mean_grade`` defaults to the influence table's grand mean.
    """
    significant = tuple(significant)
    if not significant:
        raise EmptySignificantSet("no significant factors to build a prediction from")
    names = [f.name for f in influence.factors]
    unknown = [s for s in significant if s not in names]
    if unknown:
        raise ValidationError("significant factors not in the influence table", unknown)
    m = influence.mean_grade if mean_grade is None else float(mean_grade)
    best = {s: influence.best_average(names.index(s)) for s in significant}
    predicted = m + sum(v - m for v in best.values())
    if not math.isfinite(predicted):
        raise ValidationError("predicted grade is not finite")
    return Prediction(predicted, m, significant, best)


@dataclass(frozen=True)
class ConfirmationReport:
    predicted: float
    observed: float
    best_run_grade: float = None
    setting: tuple = ()

    @property
    def gap(self):
        return self.observed - self.predicted

    @property
    def abs_gap(self):
        return abs(self.gap)

    @property
    def rel_gap(self):
        return self.abs_gap / abs(self.predicted) if self.predicted else float("inf")

    def to_text(self):
        lines = ["Optimal setting confirmation"]
        if self.setting:
            lines.append("  setting           : " + ", ".join(f"{v:g}" for v in self.setting))
        if self.best_run_grade is not None:
            lines.append(f"  best array run    : {self.best_run_grade:.6f}")
        lines += [
            f"  predicted grade   : {self.predicted:.6f}",
            f"  observed grade    : {self.observed:.6f}",
            f"  absolute gap      : {self.abs_gap:.6f}",
            f"  relative gap      : {self.rel_gap:.6f}",
        ]
        return "\n".join(lines) + "\n"


def confirm(prediction, observed, best_run_grade=None, setting=()):
    predicted = prediction.predicted if isinstance(prediction, Prediction) else float(prediction)
    if not (math.isfinite(predicted) and math.isfinite(observed)):
        raise ValidationError("confirmation grades must be finite")
    return ConfirmationReport(predicted, float(observed), best_run_grade, tuple(setting))


class TaguchiAnova(RegressorMixin, BaseEstimator):
    """Main-effects model of the grade over three-level factors.

    ``fit`` takes 1-based level indices per run (``X``, one column per
    factor) and the grades (``y``).  ``predict`` returns the additive
    estimate from the significant factors only.

    Parameters
    ----------
    f_critical : float
        F threshold for a factor to count as significant.
    factor_names : sequence of str or None
        Labels for the columns of ``X``.
    """

    def __init__(self, f_critical=DEFAULT_F_CRITICAL, factor_names=None):
        self.f_critical = f_critical
        self.factor_names = factor_names

    def fit(self, X, y):
        X = check_matrix(X, "levels").astype(int)
        y = check_vector(y, "grades", X.shape[0])
        names = self.factor_names or [f"x{j}" for j in range(X.shape[1])]
        if len(names) != X.shape[1]:
            raise ShapeMismatch(f"{len(names)} factor names for {X.shape[1]} columns")
        factors = [Factor(n, tuple(range(1, int(X[:, j].max()) + 1)))
                   for j, n in enumerate(names)]
        plan = ExperimentPlan(tuple(factors), X)
        self.influence_ = influence(plan, y)
        self.table_ = anova_from_grades(plan, y)
        self.significant_ = significant_factors(self.table_, self.f_critical)
        self.mean_ = float(y.mean())
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self)
        X = check_matrix(X, "levels").astype(int)
        names = list(self.table_.factor_names)
        out = np.full(X.shape[0], self.mean_)
        for s in self.significant_:
            j = names.index(s)
            out += self.influence_.level_means[j, X[:, j] - 1] - self.mean_
        return out

    def optimal_levels(self):
        check_is_fitted(self)
        return self.influence_.optimal_levels


def influence_from_level_means(factors, level_means, mean_grade=None):
    """Influence table from published level averages rather than raw grades."""
    means = np.asarray(level_means, dtype=float)
    if means.shape[0] != len(factors):
        raise ShapeMismatch(f"{means.shape[0]} rows of level means for {len(factors)} factors")
    optimal = tuple(int(np.argmax(row)) + 1 for row in means)
    if mean_grade is None:
        mean_grade = float(means.mean())
    means = means.copy()
    means.setflags(write=False)
    return InfluenceTable(tuple(factors), means, optimal, float(mean_grade))
