"""CART decision tree: Gini impurity, best-first axis splits, no pruning."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..base import BaseEstimator, ClassifierMixin, check_is_fitted
from ..validation import DegenerateData, check_n_features, check_X_y, check_array


@dataclass
class _Node:
    feature: int = -1
    threshold: float = 0.0
    left: "_Node | None" = None
    right: "_Node | None" = None
    prediction: int = -1

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _gini_from_counts(counts: np.ndarray, total: int) -> float:
    if total == 0:
        return 0.0
    p = counts / total
    return 1.0 - float((p * p).sum())


class DecisionTreeClassifier(BaseEstimator, ClassifierMixin):
    """Raw-feature CART.

    Splits minimize weighted Gini; equal-impurity ties go to the lowest
    feature index (then lowest threshold), so fits are deterministic.
    max_features="sqrt" samples a feature subset per split for forest use.
    """

    def __init__(
        self,
        max_depth: int | None = None,
        min_samples_split: int = 2,
        max_features: str | None = None,
        seed: int = 0,
    ):
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.max_features = max_features
        self.seed = seed

    def fit(self, X, y) -> "DecisionTreeClassifier":
        X, y = check_X_y(X, y)
        classes = np.unique(y)
        if classes.size < 2:
            raise DegenerateData("training data contains a single class")
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        encoded = np.searchsorted(classes, y)
        rng = np.random.default_rng(self.seed)
        self._root = self._build(X, encoded, rng)
        return self

    def _n_candidate_features(self, d: int) -> int:
        if self.max_features is None:
            return d
        if self.max_features == "sqrt":
            return max(1, int(math.sqrt(d)))
        raise ValueError(f"unknown max_features: {self.max_features!r}")

    def _build(self, X: np.ndarray, y: np.ndarray, rng) -> _Node:
        n_classes = self.classes_.size
        root = _Node()
        stack: list[tuple[_Node, np.ndarray, int]] = [
            (root, np.arange(X.shape[0]), 0)
        ]
        while stack:
            node, idx, depth = stack.pop()
            counts = np.bincount(y[idx], minlength=n_classes)
            node.prediction = int(np.argmax(counts))
            if (
                counts.max() == idx.size
                or idx.size < self.min_samples_split
                or (self.max_depth is not None and depth >= self.max_depth)
            ):
                continue
            split = self._best_split(X, y, idx, rng)
            if split is None:
                continue
            feature, threshold = split
            node.feature = feature
            node.threshold = threshold
            mask = X[idx, feature] <= threshold
            node.left = _Node()
            node.right = _Node()
            stack.append((node.left, idx[mask], depth + 1))
            stack.append((node.right, idx[~mask], depth + 1))
        return root

    def _best_split(
        self, X: np.ndarray, y: np.ndarray, idx: np.ndarray, rng
    ) -> tuple[int, float] | None:
        n_classes = self.classes_.size
        n = idx.size
        d = X.shape[1]
        k = self._n_candidate_features(d)
        if k < d:
            candidates = np.sort(rng.choice(d, size=k, replace=False))
        else:
            candidates = np.arange(d)
        total_counts = np.bincount(y[idx], minlength=n_classes)
        best: tuple[float, int, float] | None = None
        for feature in candidates:
            values = X[idx, feature]
            order = np.argsort(values, kind="stable")
            sorted_vals = values[order]
            sorted_y = y[idx[order]]
            left = np.zeros(n_classes)
            right = total_counts.astype(float).copy()
            for i in range(n - 1):
                cls = sorted_y[i]
                left[cls] += 1
                right[cls] -= 1
                if sorted_vals[i] == sorted_vals[i + 1]:
                    continue
                nl = i + 1
                nr = n - nl
                impurity = (
                    nl * _gini_from_counts(left, nl)
                    + nr * _gini_from_counts(right, nr)
                ) / n
                if best is None or impurity < best[0] - 1e-12:
                    threshold = (sorted_vals[i] + sorted_vals[i + 1]) / 2.0
                    best = (impurity, int(feature), float(threshold))
        if best is None:
            return None
        parent = _gini_from_counts(total_counts.astype(float), n)
        if best[0] >= parent - 1e-12:
            return None  # no impurity reduction; stop
        return best[1], best[2]

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        X = check_n_features(self, check_array(X))
        out = np.empty(X.shape[0], dtype=np.int64)
        for i, row in enumerate(X):
            node = self._root
            while not node.is_leaf:
                node = node.left if row[node.feature] <= node.threshold else node.right
            out[i] = node.prediction
        return self.classes_[out]
