"""Grey relational analysis.

Each attribute column is mapped onto [0, 1] (1 = ideal), turned into grey
relational coefficients against the ideal sequence, and the coefficients are
averaged into one grade per run.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_matrix, check_vector, check_weights
from .exceptions import DegenerateColumn, ShapeMismatch, ValidationError

LARGER = "larger-is-better"
SMALLER = "smaller-is-better"
_ALIASES = {
    "larger": LARGER,
    "max": LARGER,
    "larger-is-better": LARGER,
    "larger-the-better": LARGER,
    "smaller": SMALLER,
    "min": SMALLER,
    "smaller-is-better": SMALLER,
    "smaller-the-better": SMALLER,
}


def parse_direction(direction):
    try:
        return _ALIASES[str(direction).strip().lower()]
    except KeyError:
        raise ValidationError(
            f"unknown optimisation direction {direction!r}",
            ["use 'larger-is-better' or 'smaller-is-better'"],
        ) from None


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    direction: str
    source: str = "metric"  # "sn" for an S/N column, "metric" for a raw column

    def __post_init__(self):
        object.__setattr__(self, "direction", parse_direction(self.direction))


def _directions(specs):
    return [s.direction if isinstance(s, AttributeSpec) else parse_direction(s) for s in specs]


def normalize(table, specs, clip=False, col_min=None, col_max=None):
    """Min-max map each column to [0, 1] with 1 at the preferred end.

    A constant column carries no information; it is set to 1.0 and a
    :class:`DegenerateColumn` warning is issued.
    """
    X = check_matrix(table, "attribute table")
    directions = _directions(specs)
    if len(directions) != X.shape[1]:
        raise ShapeMismatch(f"{X.shape[1]} attribute columns but {len(directions)} specs")
    lo = X.min(axis=0) if col_min is None else np.asarray(col_min, dtype=float)
    hi = X.max(axis=0) if col_max is None else np.asarray(col_max, dtype=float)
    out = np.ones_like(X)
    for j, d in enumerate(directions):
        span = hi[j] - lo[j]
        if span == 0:
            name = specs[j].name if isinstance(specs[j], AttributeSpec) else f"column {j}"
            warnings.warn(f"attribute '{name}' is constant; normalised to 1.0",
                          DegenerateColumn, stacklevel=2)
            continue
        if d == LARGER:
            out[:, j] = (X[:, j] - lo[j]) / span
        else:
            out[:, j] = (hi[j] - X[:, j]) / span
    if clip:
        np.clip(out, 0.0, 1.0, out=out)
    return out


def grey_coefficients(normalized, zeta=0.5):
    """Grey relational coefficients against the ideal sequence (all ones).

    With deviations ``d = 1 - normalized`` and global extremes 0 and 1 the
    coefficient is ``zeta / (d + zeta)``.
    """
    if not zeta > 0:
        raise ValidationError(f"distinguishing coefficient must be > 0, got {zeta}")
    N = check_matrix(normalized, "normalized matrix")
    if np.any(N < -1e-12) or np.any(N > 1 + 1e-12):
        raise ValidationError("normalized values must lie in [0, 1]")
    dev = 1.0 - N
    d_min, d_max = 0.0, 1.0
    return (d_min + zeta * d_max) / (dev + zeta * d_max)


def rank_desc(values):
    """1-based ranks, largest first; ties keep run order."""
    order = np.argsort(-np.asarray(values, dtype=float), kind="stable")
    ranks = np.empty(len(order), dtype=int)
    ranks[order] = np.arange(1, len(order) + 1)
    return ranks


def grades(grc, weights=None):
    """Weighted mean of each run's coefficients, and the resulting ranks."""
    G = check_matrix(grc, "coefficient matrix")
    w = check_weights(weights, G.shape[1])
    g = G @ w
    return g, rank_desc(g)


@dataclass(frozen=True)
class InfluenceTable:
    factors: tuple  # Factor records, in plan column order
    level_means: np.ndarray = field(repr=False)  # (n_factors, 3)
    optimal_levels: tuple  # 1-based
    mean_grade: float

    @property
    def optimal_values(self):
        return tuple(f.value(lv) for f, lv in zip(self.factors, self.optimal_levels))

    def best_average(self, j):
        return float(self.level_means[j, self.optimal_levels[j] - 1])


def influence(plan, grade):
    """Average grade per factor level; the optimum is the best level of each."""
    g = check_vector(grade, "grades", plan.n_runs)
    k = len(plan.factors)
    n_levels = max(len(f.levels) for f in plan.factors)
    means = np.full((k, n_levels), np.nan)
    for j, f in enumerate(plan.factors):
        for lv in range(1, len(f.levels) + 1):
            mask = plan.runs[:, j] == lv
            if not mask.any():
                raise ShapeMismatch(f"factor '{f.name}' level {lv} never appears in the plan")
            means[j, lv - 1] = g[mask].mean()
    # argmax takes the first maximum, i.e. the lowest level on ties
    optimal = tuple(int(np.nanargmax(row)) + 1 for row in means)
    means.setflags(write=False)
    return InfluenceTable(plan.factors, means, optimal, float(g.mean()))


class GreyRelationalAnalysis(TransformerMixin, BaseEstimator):
    """Grey relational analysis as a fitted transformer.

    ``fit`` records each attribute column's range.  ``transform`` returns
    grey relational coefficients; ``score_samples`` returns grades.  Rows
    outside the fitted range are clipped to the ideal or worst value, which
    is how an extra confirmation run is graded against the original array.

    Parameters
    ----------
    directions : list of str or AttributeSpec
        Optimisation direction per column.
    zeta : float
        Distinguishing coefficient.
    weights : array-like or None
        Attribute weights; ``None`` means equal weights.
    """

    def __init__(self, directions, zeta=0.5, weights=None):
        self.directions = directions
        self.zeta = zeta
        self.weights = weights

    def fit(self, X, y=None):
        X = check_matrix(X, "attribute table", ensure_min_samples=2)
        directions = _directions(self.directions)
        if len(directions) != X.shape[1]:
            raise ShapeMismatch(f"{X.shape[1]} attribute columns but {len(directions)} directions")
        self.directions_ = directions
        self.weights_ = check_weights(self.weights, X.shape[1])
        self.data_min_ = X.min(axis=0)
        self.data_max_ = X.max(axis=0)
        self.degenerate_ = self.data_max_ == self.data_min_
        self.n_features_in_ = X.shape[1]
        return self

    def normalize(self, X):
        check_is_fitted(self)
        X = check_matrix(X, "attribute table")
        if X.shape[1] != self.n_features_in_:
            raise ShapeMismatch(f"expected {self.n_features_in_} attribute columns")
        return normalize(X, self.directions_, clip=True,
                         col_min=self.data_min_, col_max=self.data_max_)

    def transform(self, X):
        return grey_coefficients(self.normalize(X), self.zeta)

    def score_samples(self, X):
        return self.transform(X) @ self.weights_

    def rank(self, X):
        return rank_desc(self.score_samples(X))

    def get_feature_names_out(self, input_features=None):
        names = input_features
        if names is None:
            names = [f"x{j}" for j in range(self.n_features_in_)]
        return np.array([f"grc_{n}" for n in names], dtype=object)
