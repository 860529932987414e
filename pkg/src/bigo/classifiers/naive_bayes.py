"""Gaussian naive Bayes on raw (unstandardized) features."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, ClassifierMixin, check_is_fitted
from ..validation import DegenerateData, check_n_features, check_X_y, check_array


class GaussianNB(BaseEstimator, ClassifierMixin):
    """Per-class mean/variance with a variance floor for constant features."""

    def __init__(self, var_floor: float = 1e-9):
        self.var_floor = var_floor

    def fit(self, X, y) -> "GaussianNB":
        X, y = check_X_y(X, y)
        classes = np.unique(y)
        if classes.size < 2:
            raise DegenerateData("training data contains a single class")
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        n = X.shape[0]
        self.theta_ = np.empty((classes.size, X.shape[1]))
        self.var_ = np.empty((classes.size, X.shape[1]))
        self.priors_ = np.empty(classes.size)
        for idx, cls in enumerate(classes):
            rows = X[y == cls]
            self.theta_[idx] = rows.mean(axis=0)
            self.var_[idx] = np.maximum(rows.var(axis=0), self.var_floor)
            self.priors_[idx] = rows.shape[0] / n
        return self

    def _joint_log_likelihood(self, X: np.ndarray) -> np.ndarray:
        jll = np.empty((X.shape[0], self.classes_.size))
        for idx in range(self.classes_.size):
            diff = X - self.theta_[idx]
            log_pdf = -0.5 * (
                np.log(2.0 * np.pi * self.var_[idx]) + diff**2 / self.var_[idx]
            )
            jll[:, idx] = np.log(self.priors_[idx]) + log_pdf.sum(axis=1)
        return jll

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        X = check_n_features(self, check_array(X))
        return self.classes_[np.argmax(self._joint_log_likelihood(X), axis=1)]
