"""The 14 hand-engineered structural features and per-class density export.

All counts are taken over the subtrees of methods reachable from main, so
dead helper code does not leak into the vector. Library usage flags are
name-based: any type reference or object creation naming HashMap, HashSet,
or PriorityQueue sets the flag, and any invocation named sort sets
sort_present.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, fields as dataclass_fields

import numpy as np

from .base import BaseEstimator, TransformerMixin
from .jast.callgraph import build_call_graph, reachable_from_main
from .jast.nodes import LOOP_KINDS, STATEMENT_KINDS, AstNode, NodeKind, SourceUnit
from .jast.parser import parse
from .jast.visitor import Visitor, walk
from .labels import ALL_CLASSES, ComplexityClass


class EmptyClass(ValueError):
    """A complexity class with zero samples was requested."""


@dataclass(frozen=True)
class FeatureVector:
    number_of_methods: int = 0
    number_of_breaks: int = 0
    number_of_switches: int = 0
    number_of_loops: int = 0
    priority_queue_present: int = 0
    sort_present: int = 0
    hash_map_present: int = 0
    hash_set_present: int = 0
    nested_loop_depth: int = 0
    recursion_present: int = 0
    number_of_variables: int = 0
    number_of_ifs: int = 0
    number_of_statements: int = 0
    number_of_jumps: int = 0

    def __post_init__(self) -> None:
        for name in FEATURE_NAMES:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name in FLAG_FEATURES:
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")
        if self.nested_loop_depth > self.number_of_loops:
            raise ValueError("nested_loop_depth cannot exceed number_of_loops")
        if (self.nested_loop_depth == 0) != (self.number_of_loops == 0):
            raise ValueError(
                "nested_loop_depth and number_of_loops must be zero together"
            )

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f) for f in FEATURE_NAMES], dtype=float)

    def as_dict(self) -> dict[str, int]:
        return {f: int(getattr(self, f)) for f in FEATURE_NAMES}


FEATURE_NAMES: tuple[str, ...] = tuple(
    f.name for f in dataclass_fields(FeatureVector)
)

FLAG_FEATURES = frozenset(
    {
        "priority_queue_present",
        "sort_present",
        "hash_map_present",
        "hash_set_present",
        "recursion_present",
    }
)

_COLLECTION_FLAGS = {
    "PriorityQueue": "priority_queue_present",
    "HashMap": "hash_map_present",
    "HashSet": "hash_set_present",
}


class _FeatureCounter(Visitor):
    """Single-pass counter over one reachable method subtree (Listing-1 style:
    counts on enter, scoped depth decremented on exit).

    Nested method declarations outside anonymous bodies are separate call
    graph entries and are skipped here so nothing is counted twice; methods
    of anonymous classes belong to the enclosing method and are counted.
    """

    def __init__(self, method_root: AstNode) -> None:
        self._root = method_root
        self.counts: Counter[str] = Counter()
        self.flags: set[str] = set()
        self._depth = 0
        self.max_depth = 0
        self._anon_depth = 0

    def visit(self, node: AstNode) -> bool:
        kind = node.kind
        if kind is NodeKind.OBJECT_CREATION and node.meta.get("anon"):
            self._anon_depth += 1
        if (
            kind is NodeKind.METHOD_DECLARATION
            and node is not self._root
            and self._anon_depth == 0
        ):
            return False
        if kind in LOOP_KINDS:
            self._depth += 1
            self.max_depth = max(self.max_depth, self._depth)
            self.counts["number_of_loops"] += 1
        if kind in STATEMENT_KINDS and kind is not NodeKind.VARIABLE_DECLARATION:
            self.counts["number_of_statements"] += 1
        if kind is NodeKind.VARIABLE_DECLARATION:
            if node.meta.get("stmt"):
                self.counts["number_of_statements"] += 1
            if not node.meta.get("single"):
                self.counts["number_of_variables"] += 1
        elif kind is NodeKind.IF:
            self.counts["number_of_ifs"] += 1
        elif kind is NodeKind.SWITCH:
            self.counts["number_of_switches"] += 1
        elif kind is NodeKind.BREAK:
            self.counts["number_of_breaks"] += 1
            self.counts["number_of_jumps"] += 1
        elif kind is NodeKind.CONTINUE:
            self.counts["number_of_jumps"] += 1
        elif kind is NodeKind.METHOD_INVOCATION:
            if node.value == "sort":
                self.flags.add("sort_present")
        elif kind in (NodeKind.TYPE_REFERENCE, NodeKind.OBJECT_CREATION):
            flag = _COLLECTION_FLAGS.get(node.value or "")
            if flag is not None:
                self.flags.add(flag)
        return True

    def end_visit(self, node: AstNode) -> None:
        if node.kind in LOOP_KINDS:
            self._depth -= 1
        elif node.kind is NodeKind.OBJECT_CREATION and node.meta.get("anon"):
            self._anon_depth -= 1


def extract_features(root: AstNode, reachable: set[str]) -> FeatureVector:
    """Compute the feature vector over the reachable methods of a unit.

    ``reachable`` holds method keys (``name/arity``) as produced by the call
    graph; library keys are ignored.
    """
    if not reachable:
        raise ValueError("reachable set must be nonempty")
    graph = build_call_graph(root)
    declared = {
        key: decl for key, decl in graph.declarations.items() if key in reachable
    }
    counts: Counter[str] = Counter()
    flags: set[str] = set()
    max_depth = 0
    for key in sorted(declared):
        counter = _FeatureCounter(declared[key])
        walk(declared[key], counter)
        counts.update(counter.counts)
        flags.update(counter.flags)
        max_depth = max(max_depth, counter.max_depth)
    recursion = int(graph.has_cycle_among(set(declared)))
    values: dict[str, int] = {name: 0 for name in FEATURE_NAMES}
    values.update({k: int(v) for k, v in counts.items()})
    for flag in flags:
        values[flag] = 1
    values["number_of_methods"] = len(declared)
    values["nested_loop_depth"] = max_depth
    values["recursion_present"] = recursion
    return FeatureVector(**values)


def extract_features_from_unit(root: AstNode) -> FeatureVector:
    """Convenience wrapper: build the call graph and reachable set first."""
    graph = build_call_graph(root)
    reachable = reachable_from_main(graph)
    return extract_features(root, reachable)


def nested_loop_depth(root: AstNode) -> int:
    """Maximum syntactic loop nesting, per method; calls do not stack."""
    graph = build_call_graph(root)
    decls = list(graph.declarations.values())
    if not decls and root.kind is not NodeKind.COMPILATION_UNIT:
        decls = [root]  # bare statement or method fragment
    best = 0
    for decl in decls:
        counter = _FeatureCounter(decl)
        walk(decl, counter)
        best = max(best, counter.max_depth)
    return best


@dataclass(frozen=True)
class DensityTable:
    """Discrete per-class histogram of one feature's values."""

    feature: str
    per_class: dict[ComplexityClass, tuple[tuple[int, float], ...]]

    def frequencies(self, cls: ComplexityClass) -> dict[int, float]:
        return dict(self.per_class[cls])


def export_density(
    corpus: list[tuple[FeatureVector, ComplexityClass]], feature: str
) -> DensityTable:
    """Empirical frequency of each observed value of ``feature`` per class."""
    if feature not in FEATURE_NAMES:
        raise ValueError(f"unknown feature name: {feature!r}")
    if not corpus:
        raise ValueError("corpus must be nonempty")
    by_class: dict[ComplexityClass, Counter[int]] = {
        cls: Counter() for cls in ALL_CLASSES
    }
    present = set()
    for vector, cls in corpus:
        by_class[cls][int(getattr(vector, feature))] += 1
        present.add(cls)
    per_class: dict[ComplexityClass, tuple[tuple[int, float], ...]] = {}
    for cls in ALL_CLASSES:
        if cls not in present:
            raise EmptyClass(f"class {cls.token} has zero samples")
        total = sum(by_class[cls].values())
        per_class[cls] = tuple(
            (value, count / total) for value, count in sorted(by_class[cls].items())
        )
    return DensityTable(feature=feature, per_class=per_class)


class FeatureExtractor(BaseEstimator, TransformerMixin):
    """Transformer from source units (or parsed roots) to the 14-feature matrix."""

    def fit(self, X, y=None) -> "FeatureExtractor":
        self.n_features_in_ = len(FEATURE_NAMES)
        return self

    def transform(self, X) -> np.ndarray:
        rows = []
        for item in X:
            root = parse(item) if isinstance(item, SourceUnit) else item
            rows.append(extract_features_from_unit(root).as_array())
        return np.vstack(rows) if rows else np.empty((0, len(FEATURE_NAMES)))
