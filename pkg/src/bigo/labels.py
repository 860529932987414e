"""The five complexity classes and their canonical serialization."""

from __future__ import annotations

import enum


class ComplexityClass(enum.IntEnum):
    """Worst-case runtime classes, ordered from constant to quadratic.

    The integer order is the canonical class order used for tie-breaking
    and for confusion-matrix axes.
    """

    CONSTANT = 0
    LOGARITHMIC = 1
    LINEAR = 2
    LINEARITHMIC = 3
    QUADRATIC = 4

    @property
    def token(self) -> str:
        return _TOKENS[self]

    @classmethod
    def from_token(cls, token: str) -> "ComplexityClass":
        try:
            return _FROM_TOKEN[token.strip()]
        except KeyError:
            raise ValueError(f"unknown complexity class token: {token!r}") from None

    def __str__(self) -> str:
        return self.token


_TOKENS = {
    ComplexityClass.CONSTANT: "1",
    ComplexityClass.LOGARITHMIC: "logn",
    ComplexityClass.LINEAR: "n",
    ComplexityClass.LINEARITHMIC: "nlogn",
    ComplexityClass.QUADRATIC: "n_square",
}

_FROM_TOKEN = {token: cls for cls, token in _TOKENS.items()}

ALL_CLASSES = tuple(ComplexityClass)
