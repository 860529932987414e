"""Bootstrap-aggregated CART trees with per-split feature subsampling."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, ClassifierMixin, check_is_fitted
from ..validation import DegenerateData, check_n_features, check_X_y, check_array
from .tree import DecisionTreeClassifier


class RandomForestClassifier(BaseEstimator, ClassifierMixin):
    """100 bootstrapped trees, sqrt(d) features per split, majority vote."""

    def __init__(self, n_trees: int = 100, seed: int = 42):
        self.n_trees = n_trees
        self.seed = seed

    def fit(self, X, y) -> "RandomForestClassifier":
        X, y = check_X_y(X, y)
        classes = np.unique(y)
        if classes.size < 2:
            raise DegenerateData("training data contains a single class")
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        n = X.shape[0]
        seeds = np.random.SeedSequence(self.seed).spawn(self.n_trees)
        self.trees_: list[DecisionTreeClassifier] = []
        for tree_seq in seeds:
            rng = np.random.default_rng(tree_seq)
            sample = rng.integers(0, n, size=n)
            Xb, yb = X[sample], y[sample]
            if np.unique(yb).size < 2:
                # degenerate bootstrap; redraw once with fresh child entropy
                sample = rng.integers(0, n, size=n)
                Xb, yb = X[sample], y[sample]
                if np.unique(yb).size < 2:
                    continue
            tree = DecisionTreeClassifier(
                max_features="sqrt",
                seed=int(rng.integers(0, 2**31 - 1)),
            )
            tree.fit(Xb, yb)
            self.trees_.append(tree)
        if not self.trees_:
            raise DegenerateData("every bootstrap sample was single-class")
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        X = check_n_features(self, check_array(X))
        n_labels = int(self.classes_[-1]) + 1
        votes = np.zeros((X.shape[0], n_labels), dtype=np.int64)
        for tree in self.trees_:
            pred = tree.predict(X)
            votes[np.arange(X.shape[0]), pred] += 1
        return np.argmax(votes, axis=1)
