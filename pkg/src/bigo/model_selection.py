"""Stratified train/test splitting keyed by sample ids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ClassTooSmall(ValueError):
    """A class has too few samples to be split (or to form a subset)."""


@dataclass(frozen=True)
class DatasetSplit:
    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    X_train: np.ndarray
    y_train: np.ndarray
    X_test: np.ndarray
    y_test: np.ndarray
    seed: int
    ratio: float

    def __post_init__(self) -> None:
        if set(self.train_ids) & set(self.test_ids):
            raise ValueError("train and test ids overlap")

    def with_train_labels(self, y_train: np.ndarray) -> "DatasetSplit":
        return DatasetSplit(
            train_ids=self.train_ids,
            test_ids=self.test_ids,
            X_train=self.X_train,
            y_train=np.asarray(y_train),
            X_test=self.X_test,
            y_test=self.y_test,
            seed=self.seed,
            ratio=self.ratio,
        )


def stratified_split(
    ids: list[str],
    X: np.ndarray,
    y: np.ndarray,
    ratio: float = 0.8,
    seed: int = 42,
) -> DatasetSplit:
    """Per-class deterministic shuffle and partition at ratio.

    Every class contributes at least one train and one test sample, so
    classes with fewer than two samples raise ClassTooSmall.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio must be strictly between 0 and 1")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=np.int64)
    if not (len(ids) == X.shape[0] == y.shape[0]):
        raise ValueError("ids, X, and y must have matching lengths")
    if len(set(ids)) != len(ids):
        raise ValueError("sample ids must be unique")
    rng = np.random.default_rng(seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for cls in np.unique(y):
        members = np.flatnonzero(y == cls)
        if members.size < 2:
            raise ClassTooSmall(
                f"class {cls} has {members.size} sample(s); need at least 2"
            )
        perm = members[rng.permutation(members.size)]
        n_train = int(round(ratio * members.size))
        n_train = min(max(n_train, 1), members.size - 1)
        train_idx.extend(perm[:n_train].tolist())
        test_idx.extend(perm[n_train:].tolist())
    train_idx.sort()
    test_idx.sort()
    return DatasetSplit(
        train_ids=tuple(ids[i] for i in train_idx),
        test_ids=tuple(ids[i] for i in test_idx),
        X_train=X[train_idx],
        y_train=y[train_idx],
        X_test=X[test_idx],
        y_test=y[test_idx],
        seed=seed,
        ratio=ratio,
    )
