"""Input validation shared by the estimators."""

from __future__ import annotations

import numpy as np


class DimensionMismatch(ValueError):
    """Feature-width disagreement between fit and predict inputs."""


class DegenerateData(ValueError):
    """Training data that cannot support the requested model."""


def check_array(X, *, name: str = "X") -> np.ndarray:
    """Coerce to a 2-d float array, rejecting NaN and infinity."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DegenerateData(f"{name} is empty (shape {arr.shape})")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return arr


def check_X_y(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Validate a training pair: matching lengths, integer labels."""
    arr = check_array(X)
    labels = np.asarray(y)
    if labels.ndim != 1:
        raise ValueError(f"y must be 1-dimensional, got shape {labels.shape}")
    if labels.shape[0] != arr.shape[0]:
        raise DimensionMismatch(
            f"X has {arr.shape[0]} rows but y has {labels.shape[0]} entries"
        )
    labels = labels.astype(np.int64)
    return arr, labels


def check_n_features(estimator, X: np.ndarray) -> np.ndarray:
    """Reject predict/transform input whose width differs from fit."""
    expected = getattr(estimator, "n_features_in_", None)
    if expected is not None and X.shape[1] != expected:
        raise DimensionMismatch(
            f"{type(estimator).__name__} was fitted with {expected} features "
            f"but got {X.shape[1]}"
        )
    return X
