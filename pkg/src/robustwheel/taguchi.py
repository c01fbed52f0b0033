"""Three-level factors, the L9(3^3) orthogonal array and S/N ratios."""

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_matrix, check_positive
from .exceptions import ArityError, ShapeMismatch, ValidationError

# Standard L9 array restricted to its first three columns; 1-based levels.
L9_ARRAY = np.array(
    [
        [1, 1, 1],
        [1, 2, 2],
        [1, 3, 3],
        [2, 1, 2],
        [2, 2, 3],
        [2, 3, 1],
        [3, 1, 3],
        [3, 2, 1],
        [3, 3, 2],
    ],
    dtype=int,
)
FACTOR_SYMBOLS = ("A", "B", "C")


@dataclass(frozen=True)
class Factor:
    name: str
    levels: tuple
    unit: str = ""
    role: str = "control"

    def __post_init__(self):
        levels = tuple(float(v) for v in self.levels)
        problems = []
        if not 2 <= len(levels) <= 3:
            problems.append(f"factor '{self.name}' needs 2 or 3 levels, got {len(levels)}")
        if len(set(levels)) != len(levels):
            problems.append(f"factor '{self.name}' has repeated levels {levels}")
        if self.role not in ("control", "noise"):
            problems.append(f"factor '{self.name}' role must be 'control' or 'noise'")
        if problems:
            raise ArityError("invalid factor", problems)
        object.__setattr__(self, "levels", levels)

    def value(self, level):
        """Physical value of a 1-based level index."""
        return self.levels[level - 1]


@dataclass(frozen=True)
class ExperimentPlan:
    factors: tuple
    runs: np.ndarray = field(repr=False)
    array_id: str = "L9"

    def __post_init__(self):
        runs = np.asarray(self.runs, dtype=int)
        runs.setflags(write=False)
        object.__setattr__(self, "runs", runs)
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def n_runs(self):
        return self.runs.shape[0]

    @property
    def symbols(self):
        return FACTOR_SYMBOLS[: len(self.factors)]

    def factor_index(self, key):
        """Column of a factor given its symbol (``"A"``) or name."""
        if key in self.symbols:
            return self.symbols.index(key)
        for i, f in enumerate(self.factors):
            if f.name == key:
                return i
        raise KeyError(key)

    def values(self):
        """Physical level values per run, shape ``(n_runs, n_factors)``."""
        return np.array(
            [[f.value(lv) for f, lv in zip(self.factors, row)] for row in self.runs], dtype=float
        )

    def run_values(self, run):
        return tuple(f.value(lv) for f, lv in zip(self.factors, self.runs[run - 1]))

    def level_counts(self):
        """``counts[j][level]``: occurrences of each level in column ``j``."""
        return [
            {lv: int(np.sum(self.runs[:, j] == lv)) for lv in range(1, len(f.levels) + 1)}
            for j, f in enumerate(self.factors)
        ]

    def pair_counts(self, i, j):
        counts = {}
        for a, b in zip(self.runs[:, i], self.runs[:, j]):
            counts[(int(a), int(b))] = counts.get((int(a), int(b)), 0) + 1
        return counts

    def is_balanced(self):
        target = self.n_runs // 3
        return all(c == target for col in self.level_counts() for c in col.values())

    def is_orthogonal(self):
        k = len(self.factors)
        full = set(product(range(1, 4), repeat=2))
        for i in range(k):
            for j in range(i + 1, k):
                counts = self.pair_counts(i, j)
                if set(counts) != full or any(c != 1 for c in counts.values()):
                    return False
        return True

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["run", *self.symbols]
        for sym, f in zip(self.symbols, self.factors):
            header.append(f"{sym}_value_{f.unit}" if f.unit else f"{sym}_value")
        writer.writerow(header)
        for i, row in enumerate(self.runs, start=1):
            vals = [f"{f.value(lv):.6f}" for f, lv in zip(self.factors, row)]
            writer.writerow([i, *[int(v) for v in row], *vals])
        return buf.getvalue()


def build_l9(factors):
    """Lay three 3-level control factors on the standard L9 array."""
    factors = tuple(factors)
    problems = []
    if len(factors) != 3:
        problems.append(f"L9(3^3) takes exactly 3 factors, got {len(factors)}")
    for f in factors:
        if len(f.levels) != 3:
            problems.append(f"factor '{f.name}' has {len(f.levels)} levels, L9 needs 3")
    if problems:
        raise ArityError("factors do not fit the L9(3^3) array", problems)
    return ExperimentPlan(factors, L9_ARRAY.copy(), "L9")


def read_plan_csv(text, factors):
    """Parse a plan CSV as written by :meth:`ExperimentPlan.to_csv`."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValidationError("empty plan CSV")
    header, body = rows[0], rows[1:]
    symbols = FACTOR_SYMBOLS[: len(factors)]
    if header[: 1 + len(symbols)] != ["run", *symbols]:
        raise ValidationError("plan CSV header mismatch", [f"got {header}"])
    runs = []
    for k, row in enumerate(body, start=1):
        try:
            number = int(row[0])
            levels = [int(v) for v in row[1 : 1 + len(symbols)]]
        except (ValueError, IndexError):
            raise ValidationError("plan CSV has a malformed row", [f"row {k}: {row}"]) from None
        if number != k:
            raise ValidationError("plan CSV runs must be numbered 1..n in order", [f"row {k}"])
        runs.append(levels)
    return ExperimentPlan(tuple(factors), np.array(runs, dtype=int), "L9")


def snr_smaller_better(responses):
    """Smaller-the-better S/N ratio in dB: ``-10 log10(mean(y**2))``."""
    y = np.asarray(responses, dtype=float).ravel()
    if y.size == 0:
        raise ShapeMismatch("at least one replicate is required")
    check_positive(y.reshape(1, -1))
    return -10.0 * math.log10(float(np.mean(y * y)))


@dataclass(frozen=True)
class ResponseMatrix:
    """Replicate observations, one row per run and one column per noise level."""

    values: np.ndarray = field(repr=False)
    unit: str = "W"

    def __post_init__(self):
        v = check_matrix(self.values, "responses")
        check_positive(v)
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n_runs(self):
        return self.values.shape[0]

    @property
    def n_replicates(self):
        return self.values.shape[1]

    def row(self, run):
        return tuple(self.values[run - 1])


def snr_column(plan, responses):
    """Per-run smaller-the-better S/N ratios aligned with ``plan``."""
    values = responses.values if isinstance(responses, ResponseMatrix) else responses
    values = check_matrix(values, "responses")
    if values.shape[0] != plan.n_runs:
        raise ShapeMismatch(
            f"responses have {values.shape[0]} rows but the plan has {plan.n_runs} runs"
        )
    return SmallerTheBetterSN().fit_transform(values).ravel()


class SmallerTheBetterSN(TransformerMixin, BaseEstimator):
    """Collapse replicate columns into one smaller-the-better S/N column.

    Stateless apart from remembering the replicate count seen in ``fit``.
    """

    def fit(self, X, y=None):
        X = check_positive(check_matrix(X, "responses"))
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = check_positive(check_matrix(X, "responses"))
        if X.shape[1] != self.n_features_in_:
            raise ShapeMismatch(
                f"expected {self.n_features_in_} replicates per run, got {X.shape[1]}"
            )
        return (-10.0 * np.log10(np.mean(X * X, axis=1))).reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        return np.array(["sn_ratio_db"], dtype=object)
