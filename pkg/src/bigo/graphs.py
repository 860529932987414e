"""AST-to-graph conversion and Weisfeiler-Lehman rooted subgraph extraction.

A parsed unit becomes an undirected labeled tree over its reachable portion.
Each node carries a single string label under one of two schemes:

- concatenated: ``Kind::value`` (the kind alone when there is no value)
- selective: identifiers keep their value, literals collapse to ``LIT``,
  every other node keeps its kind

Rooted subgraphs are WL relabelings: at depth h every node's label is a
digest of its depth h-1 label plus the sorted multiset of its neighbors'
depth h-1 labels. The multiset of labels over all nodes and all depths
0..d is the graph's subgraph context.
"""

from __future__ import annotations

import enum
import hashlib
from collections import Counter
from dataclasses import dataclass, field

from .jast.callgraph import build_call_graph, reachable_from_main
from .jast.nodes import AstNode, NodeKind


class LabelMode(enum.Enum):
    CONCATENATED = "concat"
    SELECTIVE = "selective"

    @classmethod
    def from_token(cls, token: str) -> "LabelMode":
        for mode in cls:
            if mode.value == token:
                return mode
        raise ValueError(f"unknown label mode: {token!r}")


@dataclass
class LabeledGraph:
    """Undirected labeled tree: labels[i] is node i's label."""

    graph_id: str
    labels: list[str]
    edges: list[tuple[int, int]]
    _adjacency: list[list[int]] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        for a, b in self.edges:
            if a == b:
                raise ValueError("self-loop in graph edges")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("edge endpoint out of range")
        if n > 0 and len(self.edges) != n - 1:
            raise ValueError(
                f"a tree on {n} nodes needs {n - 1} edges, got {len(self.edges)}"
            )

    @property
    def n_nodes(self) -> int:
        return len(self.labels)

    def adjacency(self) -> list[list[int]]:
        if self._adjacency is None:
            adj: list[list[int]] = [[] for _ in self.labels]
            for a, b in self.edges:
                adj[a].append(b)
                adj[b].append(a)
            self._adjacency = adj
        return self._adjacency


def node_label(node: AstNode, mode: LabelMode) -> str:
    """Single-label scheme for one AST node."""
    if mode is LabelMode.CONCATENATED:
        if node.value:
            return f"{node.kind.label}::{node.value}"
        return node.kind.label
    if node.kind is NodeKind.SIMPLE_NAME and node.value:
        return node.value
    if node.kind is NodeKind.LITERAL:
        return "LIT"
    return node.kind.label


def ast_to_graph(
    root: AstNode, mode: LabelMode, graph_id: str = ""
) -> LabeledGraph:
    """Convert the reachable portion of a unit into a labeled tree.

    Unreachable declared methods are pruned before conversion, matching the
    filter the feature extractor applies.
    """
    pruned_ids = _unreachable_decl_ids(root)
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    stack: list[tuple[AstNode, int]] = [(root, -1)]
    while stack:
        node, parent = stack.pop()
        if id(node) in pruned_ids:
            continue
        index = len(labels)
        labels.append(node_label(node, mode))
        if parent >= 0:
            edges.append((parent, index))
        for child in reversed(node.children):
            stack.append((child, index))
    return LabeledGraph(graph_id=graph_id, labels=labels, edges=edges)


def _unreachable_decl_ids(root: AstNode) -> set[int]:
    if root.kind is not NodeKind.COMPILATION_UNIT:
        return set()
    graph = build_call_graph(root)
    reachable = reachable_from_main(graph)
    pruned: set[int] = set()
    registered = {id(d) for d in graph.declarations.values()}
    for key, decl in graph.declarations.items():
        if key not in reachable:
            pruned.add(id(decl))
    # duplicate-key declarations lost the overload collision; prune them too
    for node in root.walk():
        if (
            node.kind is NodeKind.METHOD_DECLARATION
            and id(node) not in registered
            and not _inside_anonymous_body(node, root)
        ):
            pruned.add(id(node))
    return pruned


def _inside_anonymous_body(target: AstNode, root: AstNode) -> bool:
    """True when target sits under an anonymous class creation."""
    path_found: list[bool] = [False]

    def search(node: AstNode, under_anon: bool) -> bool:
        if node is target:
            path_found[0] = under_anon
            return True
        flag = under_anon or (
            node.kind is NodeKind.OBJECT_CREATION and node.meta.get("anon", False)
        )
        return any(search(child, flag) for child in node.children)

    search(root, False)
    return path_found[0]


def extract_rooted_subgraphs(graph: LabeledGraph, depth: int) -> Counter[str]:
    """Multiset of WL labels over all nodes and depths 0..depth.

    Depth-0 entries are the raw node labels; deeper entries are fixed-width
    digests of (previous label, sorted neighbor labels), length-prefixed so
    no label content can collide with the encoding.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    result: Counter[str] = Counter()
    current = list(graph.labels)
    result.update(current)
    adj = graph.adjacency()
    for _ in range(depth):
        nxt = [
            wl_digest(current[i], [current[j] for j in adj[i]])
            for i in range(graph.n_nodes)
        ]
        result.update(nxt)
        current = nxt
    return result


def wl_digest(own_label: str, neighbor_labels: list[str]) -> str:
    """Canonical fixed-width digest of one WL relabeling step."""
    parts = [own_label] + sorted(neighbor_labels)
    canonical = "".join(f"{len(p)}:{p}" for p in parts)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
