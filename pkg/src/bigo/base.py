"""Minimal estimator protocol: get_params/set_params, fit/predict/transform.

Estimator parameters are the keyword arguments of __init__, stored verbatim
as attributes of the same name. Attributes learned during fit end in an
underscore, and fitted state is checked through check_is_fitted.
"""

from __future__ import annotations

import inspect
from typing import Any


class BaseEstimator:
    """Parameter introspection shared by every estimator."""

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return [
            name
            for name, p in sig.parameters.items()
            if name != "self" and p.kind is not inspect.Parameter.VAR_KEYWORD
        ]

    def get_params(self) -> dict[str, Any]:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params: Any) -> "BaseEstimator":
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}"
                )
            setattr(self, name, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


class ClassifierMixin:
    """Adds accuracy scoring on top of fit/predict."""

    def score(self, X, y) -> float:
        import numpy as np

        pred = self.predict(X)
        y = np.asarray(y)
        return float(np.mean(pred == y))


class TransformerMixin:
    """Adds fit_transform on top of fit/transform."""

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)


class NotFittedError(RuntimeError):
    """Raised when predict/transform is called before fit."""


def check_is_fitted(estimator: Any, attribute: str) -> None:
    if not hasattr(estimator, attribute):
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted; call fit first"
        )
