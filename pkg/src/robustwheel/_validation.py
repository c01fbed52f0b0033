"""Input checks shared by the estimators."""

import math

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import NonPositiveResponse, ShapeMismatch, ValidationError, WeightError


def check_matrix(X, name="X", ensure_min_samples=1):
    """2-D finite float array; 1-D input is read as a single column."""
    X = np.asarray(X, dtype=float) if not hasattr(X, "to_numpy") else X.to_numpy(dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    try:
        return check_array(X, dtype=float, ensure_min_samples=ensure_min_samples,
                           input_name=name)
    except ValueError as exc:
        raise ValidationError(f"invalid {name}", [str(exc)]) from exc


def check_vector(y, name="y", length=None):
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        y = y.ravel() if y.ndim == 2 and 1 in y.shape else y
    if y.ndim != 1:
        raise ShapeMismatch(f"{name} must be one-dimensional, got shape {y.shape}")
    if length is not None and y.shape[0] != length:
        raise ShapeMismatch(f"{name} has {y.shape[0]} entries, expected {length}")
    if not np.all(np.isfinite(y)):
        raise ValidationError(f"{name} contains non-finite values")
    return y


def check_positive(X, name="responses"):
    bad = np.argwhere(~(X > 0))
    if bad.size:
        where = [f"row {i + 1}, column {j + 1}: {X[i, j]!r}" for i, j in bad[:10]]
        raise NonPositiveResponse(f"{name} must be strictly positive", where)
    return X


def check_weights(weights, n_features):
    """Nonnegative weights summing to one; ``None`` means equal weights."""
    if weights is None:
        return np.full(n_features, 1.0 / n_features)
    w = np.asarray(weights, dtype=float).ravel()
    problems = []
    if w.shape[0] != n_features:
        problems.append(f"expected {n_features} weights, got {w.shape[0]}")
    elif not np.all(np.isfinite(w)):
        problems.append("weights must be finite")
    else:
        if np.any(w < 0):
            problems.append(f"weights must be nonnegative, got {w.tolist()}")
        if not math.isclose(float(w.sum()), 1.0, rel_tol=0, abs_tol=1e-9):
            problems.append(f"weights must sum to 1, got {float(w.sum())!r}")
    if problems:
        raise WeightError("invalid attribute weights", problems)
    return w
