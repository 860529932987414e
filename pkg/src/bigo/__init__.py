"""Worst-case runtime complexity prediction for Java source programs.

Two pipelines over a common AST front end: hand-engineered structural
features, and graph embeddings learned from Weisfeiler-Lehman rooted
subgraphs. Both feed a suite of from-scratch classifiers over the five
complexity classes O(1), O(log n), O(n), O(n log n), O(n^2).
"""

from .labels import ComplexityClass

__version__ = "0.1.0"

__all__ = ["ComplexityClass", "__version__"]
