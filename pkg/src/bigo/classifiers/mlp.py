"""Single-hidden-layer perceptron: 64 ReLU units, softmax output."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, ClassifierMixin, check_is_fitted
from ..validation import DegenerateData, check_n_features, check_X_y, check_array
from ._scaling import Standardizer
from .logistic import softmax


class MLPClassifier(BaseEstimator, ClassifierMixin):
    """Full-batch gradient descent on cross-entropy, Glorot-uniform init."""

    def __init__(
        self,
        hidden: int = 64,
        epochs: int = 300,
        learning_rate: float = 0.1,
        seed: int = 42,
    ):
        self.hidden = hidden
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.seed = seed

    def fit(self, X, y) -> "MLPClassifier":
        X, y = check_X_y(X, y)
        classes = np.unique(y)
        if classes.size < 2:
            raise DegenerateData("training data contains a single class")
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        self._scaler = Standardizer()
        Xs = self._scaler.fit_transform(X)
        n, d = Xs.shape
        c = classes.size
        Y = np.zeros((n, c))
        for idx, cls in enumerate(classes):
            Y[y == cls, idx] = 1.0
        rng = np.random.default_rng(self.seed)
        limit1 = np.sqrt(6.0 / (d + self.hidden))
        limit2 = np.sqrt(6.0 / (self.hidden + c))
        W1 = rng.uniform(-limit1, limit1, size=(d, self.hidden))
        b1 = np.zeros(self.hidden)
        W2 = rng.uniform(-limit2, limit2, size=(self.hidden, c))
        b2 = np.zeros(c)
        lr = self.learning_rate
        for _ in range(self.epochs):
            hidden_pre = Xs @ W1 + b1
            hidden_act = np.maximum(hidden_pre, 0.0)
            probs = softmax(hidden_act @ W2 + b2)
            delta_out = (probs - Y) / n
            grad_W2 = hidden_act.T @ delta_out
            grad_b2 = delta_out.sum(axis=0)
            delta_hidden = (delta_out @ W2.T) * (hidden_pre > 0.0)
            grad_W1 = Xs.T @ delta_hidden
            grad_b1 = delta_hidden.sum(axis=0)
            W1 -= lr * grad_W1
            b1 -= lr * grad_b1
            W2 -= lr * grad_W2
            b2 -= lr * grad_b2
        self._params = (W1, b1, W2, b2)
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        X = check_n_features(self, check_array(X))
        W1, b1, W2, b2 = self._params
        hidden_act = np.maximum(self._scaler.transform(X) @ W1 + b1, 0.0)
        scores = hidden_act @ W2 + b2
        return self.classes_[np.argmax(scores, axis=1)]
