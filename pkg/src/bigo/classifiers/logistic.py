"""Multinomial logistic regression trained by full-batch gradient descent."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, ClassifierMixin, check_is_fitted
from ..validation import DegenerateData, check_n_features, check_X_y, check_array
from ._scaling import Standardizer


def softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


class LogisticRegression(BaseEstimator, ClassifierMixin):
    """Softmax regression: cross-entropy + L2 penalty on weights (not bias).

    The loss is mean cross-entropy plus (l2/2)*||W||^2; its analytic gradient
    is exposed through loss_and_gradient for finite-difference checking.
    """

    def __init__(
        self,
        l2: float = 1e-4,
        iterations: int = 500,
        learning_rate: float = 0.5,
    ):
        self.l2 = l2
        self.iterations = iterations
        self.learning_rate = learning_rate

    def fit(self, X, y) -> "LogisticRegression":
        X, y = check_X_y(X, y)
        classes = np.unique(y)
        if classes.size < 2:
            raise DegenerateData("training data contains a single class")
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        self._scaler = Standardizer()
        Xs = self._scaler.fit_transform(X)
        Y = np.zeros((X.shape[0], classes.size))
        for idx, cls in enumerate(classes):
            Y[y == cls, idx] = 1.0
        W = np.zeros((X.shape[1], classes.size))
        b = np.zeros(classes.size)
        for _ in range(self.iterations):
            grad_W, grad_b = self._gradient(Xs, Y, W, b)
            W -= self.learning_rate * grad_W
            b -= self.learning_rate * grad_b
        self.coef_ = W
        self.intercept_ = b
        return self

    def _gradient(
        self, X: np.ndarray, Y: np.ndarray, W: np.ndarray, b: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        n = X.shape[0]
        probs = softmax(X @ W + b)
        diff = probs - Y
        grad_W = X.T @ diff / n + self.l2 * W
        grad_b = diff.mean(axis=0)
        return grad_W, grad_b

    def loss_and_gradient(
        self, X: np.ndarray, Y: np.ndarray, W: np.ndarray, b: np.ndarray
    ) -> tuple[float, np.ndarray, np.ndarray]:
        """Loss plus analytic gradients at (W, b) on already-scaled X."""
        n = X.shape[0]
        scores = X @ W + b
        shifted = scores - scores.max(axis=1, keepdims=True)
        log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
        ce = -float((Y * log_probs).sum() / n)
        loss = ce + 0.5 * self.l2 * float((W**2).sum())
        grad_W, grad_b = self._gradient(X, Y, W, b)
        return loss, grad_W, grad_b

    def decision_function(self, X) -> np.ndarray:
        check_is_fitted(self, "coef_")
        X = check_n_features(self, check_array(X))
        return self._scaler.transform(X) @ self.coef_ + self.intercept_

    def predict(self, X) -> np.ndarray:
        scores = self.decision_function(X)
        return self.classes_[np.argmax(scores, axis=1)]
