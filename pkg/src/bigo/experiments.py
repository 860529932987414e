"""Classifier grids and the experiments behind each report table.

Covers the full algorithm grid on features, the per-feature analysis, the
class-subset comparisons, and the two-representation embedding run, plus
CSV writers that fix each table's row and column order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .base import BaseEstimator
from .classifiers import ALGORITHM_ORDER, make_classifier
from .features import FEATURE_NAMES
from .labels import ComplexityClass
from .metrics import EvalReport, evaluate
from .model_selection import ClassTooSmall, DatasetSplit, stratified_split

ALGORITHM_DISPLAY = {
    "kmeans": "K-means",
    "random_forest": "Random forest",
    "naive_bayes": "Naive Bayes",
    "knn": "k-Nearest",
    "logistic_regression": "Logistic Regression",
    "decision_tree": "Decision Tree",
    "mlp": "MLP Classifier",
    "svm": "SVM",
}

# feature rows in report order with their display labels
FEATURE_DISPLAY = (
    ("number_of_ifs", "No. of ifs"),
    ("number_of_switches", "No. of switches"),
    ("number_of_loops", "No. of loops"),
    ("number_of_breaks", "No. of breaks"),
    ("priority_queue_present", "Priority Queue present"),
    ("sort_present", "No. of sorts"),
    ("hash_set_present", "Hash Set present"),
    ("hash_map_present", "Hash Map present"),
    ("recursion_present", "Recursion present"),
    ("nested_loop_depth", "Nested loop depth"),
    ("number_of_variables", "No. of Variables"),
    ("number_of_methods", "No. of methods"),
    ("number_of_jumps", "No. of jumps"),
    ("number_of_statements", "No. of statements"),
)


@dataclass
class GridResult:
    algorithm: str
    model: BaseEstimator
    report: EvalReport


def run_grid(
    ids: list[str],
    X: np.ndarray,
    y: np.ndarray,
    classes: tuple[int, ...] | None = None,
    algorithms: tuple[str, ...] = ALGORITHM_ORDER,
    ratio: float = 0.8,
    seed: int = 42,
    split: DatasetSplit | None = None,
) -> dict[str, GridResult]:
    """Train and evaluate each algorithm on one shared stratified split."""
    if split is None:
        split = stratified_split(ids, X, y, ratio=ratio, seed=seed)
    if classes is None:
        classes = tuple(int(c) for c in np.unique(y))
    results: dict[str, GridResult] = {}
    for name in algorithms:
        model = make_classifier(name, seed=seed)
        model.fit(split.X_train, split.y_train)
        report = evaluate(split.y_test, model.predict(split.X_test), classes)
        results[name] = GridResult(algorithm=name, model=model, report=report)
    return results


def per_feature_analysis(
    ids: list[str],
    X: np.ndarray,
    y: np.ndarray,
    ratio: float = 0.8,
    seed: int = 42,
) -> dict[str, float]:
    """Mean test accuracy over all algorithms using each feature alone."""
    split = stratified_split(ids, X, y, ratio=ratio, seed=seed)
    classes = tuple(int(c) for c in np.unique(y))
    result: dict[str, float] = {}
    for j, feature in enumerate(FEATURE_NAMES):
        accs = []
        for name in ALGORITHM_ORDER:
            model = make_classifier(name, seed=seed)
            model.fit(split.X_train[:, [j]], split.y_train)
            report = evaluate(
                split.y_test, model.predict(split.X_test[:, [j]]), classes
            )
            accs.append(report.accuracy)
        result[feature] = float(np.mean(accs))
    return result


def class_subset_experiment(
    ids: list[str],
    X: np.ndarray,
    y: np.ndarray,
    classes: tuple[ComplexityClass, ...] | tuple[int, ...],
    ratio: float = 0.8,
    seed: int = 42,
) -> dict[str, GridResult]:
    """Rerun the grid restricted to a subset of complexity classes."""
    subset = tuple(sorted(int(c) for c in classes))
    if len(subset) < 2:
        raise ClassTooSmall("class subset must contain at least 2 classes")
    mask = np.isin(np.asarray(y, dtype=np.int64), subset)
    kept_ids = [uid for uid, keep in zip(ids, mask) if keep]
    return run_grid(
        kept_ids,
        np.asarray(X, dtype=float)[mask],
        np.asarray(y, dtype=np.int64)[mask],
        classes=subset,
        ratio=ratio,
        seed=seed,
    )


def embedding_experiment(
    vectors_by_mode: dict[str, dict[str, np.ndarray]],
    labels_by_id: dict[str, int],
    algorithm: str = "svm",
    ratio: float = 0.8,
    seed: int = 42,
) -> dict[str, EvalReport]:
    """One classifier per label mode over embedding vectors (two-row table)."""
    out: dict[str, EvalReport] = {}
    for mode, vectors in vectors_by_mode.items():
        ids = sorted(vectors)
        X = np.vstack([vectors[i] for i in ids])
        y = np.array([labels_by_id[i] for i in ids], dtype=np.int64)
        split = stratified_split(ids, X, y, ratio=ratio, seed=seed)
        model = make_classifier(algorithm, seed=seed)
        model.fit(split.X_train, split.y_train)
        classes = tuple(int(c) for c in np.unique(y))
        out[mode] = evaluate(split.y_test, model.predict(split.X_test), classes)
    return out


# ---- table writers ----------------------------------------------------------


def write_algorithm_table(
    results: dict[str, GridResult], path
) -> None:
    """Algorithm/Accuracy/Precision/Recall rows in fixed display order
    (the shape of the main grid and both class-subset tables)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["Algorithm", "Accuracy", "Precision", "Recall"])
        for name in ALGORITHM_ORDER:
            if name not in results:
                continue
            r = results[name].report
            writer.writerow(
                [
                    ALGORITHM_DISPLAY[name],
                    f"{r.accuracy:.2f}",
                    f"{r.weighted_precision:.2f}",
                    f"{r.weighted_recall:.2f}",
                ]
            )


def write_per_feature_table(result: dict[str, float], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["Feature", "Mean Accuracy"])
        for feature, display in FEATURE_DISPLAY:
            writer.writerow([display, f"{result[feature]:.2f}"])


def write_embedding_table(reports: dict[str, EvalReport], path) -> None:
    """Two rows: concatenated then selective label representations."""
    rows = [
        ("concat", "Node Labels with concatenation"),
        ("selective", "Node Labels without concatenation"),
    ]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["AST Representation", "Accuracy", "Precision", "Recall"])
        for mode, display in rows:
            if mode not in reports:
                continue
            r = reports[mode]
            writer.writerow(
                [
                    display,
                    f"{r.accuracy:.2f}",
                    f"{r.weighted_precision:.2f}",
                    f"{r.weighted_recall:.2f}",
                ]
            )
