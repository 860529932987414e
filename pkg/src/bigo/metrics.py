"""Evaluation report: accuracy, weighted precision/recall, confusion matrix.

Weighted metrics are computed in exact rational arithmetic before the final
float conversion, which is why support-weighted recall equals accuracy
exactly (both reduce to trace/total).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .labels import ComplexityClass


@dataclass(frozen=True)
class EvalReport:
    accuracy: float  # percent
    weighted_precision: float  # percent
    weighted_recall: float  # percent
    confusion_matrix: tuple[tuple[int, ...], ...]  # rows true, cols predicted
    per_class: tuple[tuple[float, float, int], ...]  # (precision, recall, support)
    classes: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "accuracy": self.accuracy,
                "weighted_precision": self.weighted_precision,
                "weighted_recall": self.weighted_recall,
                "confusion_matrix": [list(row) for row in self.confusion_matrix],
                "per_class": [
                    {
                        "class": ComplexityClass(cls).token
                        if cls in set(int(c) for c in ComplexityClass)
                        else str(cls),
                        "precision": p,
                        "recall": r,
                        "support": s,
                    }
                    for cls, (p, r, s) in zip(self.classes, self.per_class)
                ],
                "classes": list(self.classes),
            },
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "EvalReport":
        data = json.loads(text)
        return cls(
            accuracy=data["accuracy"],
            weighted_precision=data["weighted_precision"],
            weighted_recall=data["weighted_recall"],
            confusion_matrix=tuple(
                tuple(int(v) for v in row) for row in data["confusion_matrix"]
            ),
            per_class=tuple(
                (e["precision"], e["recall"], e["support"])
                for e in data["per_class"]
            ),
            classes=tuple(int(c) for c in data["classes"]),
        )


def confusion_matrix(
    y_true: np.ndarray, y_pred: np.ndarray, classes: tuple[int, ...]
) -> np.ndarray:
    index = {cls: i for i, cls in enumerate(classes)}
    matrix = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        matrix[index[int(t)], index[int(p)]] += 1
    return matrix


def evaluate(y_true, y_pred, classes: tuple[int, ...] | None = None) -> EvalReport:
    """Score predictions; classes defaults to the five complexity classes."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape:
        raise ValueError("y_true and y_pred must have equal length")
    if y_true.size == 0:
        raise ValueError("cannot evaluate an empty test set")
    if classes is None:
        classes = tuple(int(c) for c in ComplexityClass)
    matrix = confusion_matrix(y_true, y_pred, classes)
    total = int(matrix.sum())
    diag = [int(matrix[i, i]) for i in range(len(classes))]
    supports = [int(matrix[i].sum()) for i in range(len(classes))]
    pred_counts = [int(matrix[:, i].sum()) for i in range(len(classes))]

    accuracy = Fraction(sum(diag), total)
    per_class: list[tuple[float, float, int]] = []
    w_precision = Fraction(0)
    w_recall = Fraction(0)
    for i in range(len(classes)):
        precision = (
            Fraction(diag[i], pred_counts[i]) if pred_counts[i] else Fraction(0)
        )
        recall = Fraction(diag[i], supports[i]) if supports[i] else Fraction(0)
        weight = Fraction(supports[i], total)
        w_precision += weight * precision
        w_recall += weight * recall
        per_class.append((float(precision) * 100.0, float(recall) * 100.0, supports[i]))
    return EvalReport(
        accuracy=float(accuracy) * 100.0,
        weighted_precision=float(w_precision) * 100.0,
        weighted_recall=float(w_recall) * 100.0,
        confusion_matrix=tuple(tuple(int(v) for v in row) for row in matrix),
        per_class=tuple(per_class),
        classes=tuple(classes),
    )
