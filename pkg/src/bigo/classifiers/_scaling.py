"""Train-set standardization shared by the distance/gradient classifiers."""

from __future__ import annotations

import numpy as np


class Standardizer:
    """Zero-mean unit-variance scaling; constant columns are left centered."""

    def fit(self, X: np.ndarray) -> "Standardizer":
        self.mean_ = X.mean(axis=0)
        var = X.var(axis=0)
        scale = np.sqrt(var)
        scale[scale == 0.0] = 1.0
        self.scale_ = scale
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean_) / self.scale_

    def fit_transform(self, X: np.ndarray) -> np.ndarray:
        return self.fit(X).transform(X)
