"""Linear SVM: one-vs-rest hinge loss trained by per-sample SGD."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, ClassifierMixin, check_is_fitted
from ..validation import DegenerateData, check_n_features, check_X_y, check_array
from ._scaling import Standardizer


class LinearSVM(BaseEstimator, ClassifierMixin):
    """Pegasos-style SGD: step 1/(lambda*t), L2 on the augmented weights.

    The bias rides along as a constant-1 feature so the 1/(lambda*t)
    schedule stays stable. One binary hinge problem per class; prediction
    is the argmax margin (ties to the lowest class index via argmax).
    """

    def __init__(self, l2: float = 1e-4, epochs: int = 200, seed: int = 42):
        self.l2 = l2
        self.epochs = epochs
        self.seed = seed

    def fit(self, X, y) -> "LinearSVM":
        X, y = check_X_y(X, y)
        classes = np.unique(y)
        if classes.size < 2:
            raise DegenerateData("training data contains a single class")
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        self._scaler = Standardizer()
        Xs = self._scaler.fit_transform(X)
        Xa = np.hstack([Xs, np.ones((Xs.shape[0], 1))])
        n, d = Xa.shape
        self.coef_ = np.zeros((classes.size, d - 1))
        self.intercept_ = np.zeros(classes.size)
        rng = np.random.default_rng(self.seed)
        orders = [rng.permutation(n) for _ in range(self.epochs)]
        for c, cls in enumerate(classes):
            target = np.where(y == cls, 1.0, -1.0)
            w = np.zeros(d)
            t = 0
            for epoch in range(self.epochs):
                for i in orders[epoch]:
                    t += 1
                    eta = 1.0 / (self.l2 * t)
                    margin = target[i] * (Xa[i] @ w)
                    w *= 1.0 - eta * self.l2
                    if margin < 1.0:
                        w += eta * target[i] * Xa[i]
            self.coef_[c] = w[:-1]
            self.intercept_[c] = w[-1]
        return self

    def decision_function(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        X = check_n_features(self, check_array(X))
        return self._scaler.transform(X) @ self.coef_.T + self.intercept_

    def predict(self, X) -> np.ndarray:
        scores = self.decision_function(X)
        return self.classes_[np.argmax(scores, axis=1)]
