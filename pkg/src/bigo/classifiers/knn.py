"""k-nearest neighbors with Euclidean distance and deterministic ties."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, ClassifierMixin, check_is_fitted
from ..validation import DegenerateData, check_n_features, check_X_y, check_array
from ._scaling import Standardizer


class KNeighborsClassifier(BaseEstimator, ClassifierMixin):
    """Majority vote over the k nearest training points.

    Neighbors are ordered by (distance, training index); vote ties resolve
    to the lowest class index. Features are standardized on the train set.
    """

    def __init__(self, k: int = 5):
        self.k = k

    def fit(self, X, y) -> "KNeighborsClassifier":
        X, y = check_X_y(X, y)
        if self.k < 1:
            raise ValueError("k must be at least 1")
        classes = np.unique(y)
        if classes.size < 2:
            raise DegenerateData("training data contains a single class")
        self._scaler = Standardizer()
        self._X = self._scaler.fit_transform(X)
        self._y = y
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        X = check_n_features(self, check_array(X))
        X = self._scaler.transform(X)
        k = min(self.k, self._X.shape[0])
        out = np.empty(X.shape[0], dtype=self._y.dtype)
        for i, point in enumerate(X):
            d2 = np.einsum("ij,ij->i", self._X - point, self._X - point)
            order = np.lexsort((np.arange(d2.shape[0]), d2))[:k]
            votes = np.bincount(self._y[order], minlength=int(self.classes_[-1]) + 1)
            out[i] = int(np.argmax(votes))  # argmax takes the lowest on ties
        return out
