"""The eight reference classifiers, a registry, and model file I/O."""

from __future__ import annotations

import pickle

from ..base import BaseEstimator
from .forest import RandomForestClassifier
from .kmeans import KMeansClassifier
from .knn import KNeighborsClassifier
from .logistic import LogisticRegression
from .mlp import MLPClassifier
from .naive_bayes import GaussianNB
from .svm import LinearSVM
from .tree import DecisionTreeClassifier

ALGORITHMS: dict[str, type[BaseEstimator]] = {
    "kmeans": KMeansClassifier,
    "random_forest": RandomForestClassifier,
    "naive_bayes": GaussianNB,
    "knn": KNeighborsClassifier,
    "logistic_regression": LogisticRegression,
    "decision_tree": DecisionTreeClassifier,
    "mlp": MLPClassifier,
    "svm": LinearSVM,
}

# row order used by the algorithm-comparison report
ALGORITHM_ORDER = (
    "kmeans",
    "random_forest",
    "naive_bayes",
    "knn",
    "logistic_regression",
    "decision_tree",
    "mlp",
    "svm",
)

_SEEDED = {"kmeans", "random_forest", "svm", "mlp", "decision_tree"}

_MAGIC = b"bigo-model"
_FORMAT_VERSION = 1


def make_classifier(algorithm: str, seed: int = 42, **hyperparameters):
    """Instantiate a registry algorithm with its pinned defaults."""
    try:
        cls = ALGORITHMS[algorithm]
    except KeyError:
        known = ", ".join(sorted(ALGORITHMS))
        raise ValueError(f"unknown algorithm {algorithm!r} (known: {known})") from None
    if algorithm in _SEEDED:
        hyperparameters.setdefault("seed", seed)
    return cls(**hyperparameters)


def algorithm_name(model: BaseEstimator) -> str:
    for name, cls in ALGORITHMS.items():
        if type(model) is cls:
            return name
    raise ValueError(f"{type(model).__name__} is not a registry algorithm")


def save_model(model: BaseEstimator, path) -> None:
    """Versioned binary blob with an algorithm tag header."""
    name = algorithm_name(model)
    with open(path, "wb") as fh:
        fh.write(_MAGIC + b" %d %s\n" % (_FORMAT_VERSION, name.encode("ascii")))
        pickle.dump(model, fh, protocol=4)


def load_model(path) -> BaseEstimator:
    with open(path, "rb") as fh:
        header = fh.readline().strip().split(b" ")
        if len(header) != 3 or header[0] != _MAGIC:
            raise ValueError(f"{path}: not a model file")
        if int(header[1]) != _FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported model format version")
        name = header[2].decode("ascii")
        if name not in ALGORITHMS:
            raise ValueError(f"{path}: unknown algorithm tag {name!r}")
        model = pickle.load(fh)
        if type(model) is not ALGORITHMS[name]:
            raise ValueError(f"{path}: header tag does not match payload")
        return model


__all__ = [
    "ALGORITHMS",
    "ALGORITHM_ORDER",
    "DecisionTreeClassifier",
    "GaussianNB",
    "KMeansClassifier",
    "KNeighborsClassifier",
    "LinearSVM",
    "LogisticRegression",
    "MLPClassifier",
    "RandomForestClassifier",
    "algorithm_name",
    "load_model",
    "make_classifier",
    "save_model",
]
