"""k-means clustering used as a classifier via majority-label clusters."""

from __future__ import annotations

import numpy as np

from ..base import BaseEstimator, ClassifierMixin, check_is_fitted
from ..validation import DegenerateData, check_n_features, check_X_y, check_array
from ._scaling import Standardizer


class KMeansClassifier(BaseEstimator, ClassifierMixin):
    """Lloyd's algorithm with k-means++ seeding; each cluster predicts the
    majority training class among its members (ties to the lowest class)."""

    def __init__(self, k: int = 5, max_iter: int = 300, seed: int = 42):
        self.k = k
        self.max_iter = max_iter
        self.seed = seed

    def fit(self, X, y) -> "KMeansClassifier":
        X, y = check_X_y(X, y)
        classes = np.unique(y)
        if classes.size < 2:
            raise DegenerateData("training data contains a single class")
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        self._scaler = Standardizer()
        Xs = self._scaler.fit_transform(X)
        n = Xs.shape[0]
        k = min(self.k, n)
        rng = np.random.default_rng(self.seed)
        centroids = self._seed_centroids(Xs, k, rng)
        assign = np.full(n, -1)
        for _ in range(self.max_iter):
            d2 = _sq_distances(Xs, centroids)
            new_assign = np.argmin(d2, axis=1)
            if np.array_equal(new_assign, assign):
                break
            assign = new_assign
            for c in range(k):
                members = assign == c
                if members.any():
                    centroids[c] = Xs[members].mean(axis=0)
                else:
                    # re-seed a dead cluster to the worst-fit point
                    worst = int(np.argmax(d2[np.arange(n), assign]))
                    centroids[c] = Xs[worst]
        self.centroids_ = centroids
        n_labels = int(classes[-1]) + 1
        self.cluster_labels_ = np.empty(k, dtype=np.int64)
        for c in range(k):
            members = y[assign == c]
            if members.size:
                votes = np.bincount(members, minlength=n_labels)
                self.cluster_labels_[c] = int(np.argmax(votes))
            else:
                self.cluster_labels_[c] = int(classes[0])
        return self

    @staticmethod
    def _seed_centroids(X: np.ndarray, k: int, rng) -> np.ndarray:
        n = X.shape[0]
        centroids = np.empty((k, X.shape[1]))
        first = int(rng.integers(0, n))
        centroids[0] = X[first]
        closest = _sq_distances(X, centroids[:1]).ravel()
        for c in range(1, k):
            total = closest.sum()
            if total == 0.0:
                pick = int(rng.integers(0, n))
            else:
                pick = int(rng.choice(n, p=closest / total))
            centroids[c] = X[pick]
            d_new = _sq_distances(X, centroids[c : c + 1]).ravel()
            closest = np.minimum(closest, d_new)
        return centroids

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "centroids_")
        X = check_n_features(self, check_array(X))
        Xs = self._scaler.transform(X)
        nearest = np.argmin(_sq_distances(Xs, self.centroids_), axis=1)
        return self.cluster_labels_[nearest]


def _sq_distances(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Pairwise squared Euclidean distances, (n, k)."""
    x2 = np.einsum("ij,ij->i", X, X)[:, None]
    c2 = np.einsum("ij,ij->i", C, C)[None, :]
    d2 = x2 + c2 - 2.0 * (X @ C.T)
    return np.maximum(d2, 0.0)
