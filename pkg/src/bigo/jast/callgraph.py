"""Method-level call graph and reachability from main.

Methods are keyed as ``name/arity``. Invocations are matched by name and
argument count only (no type resolution); calls that match no declared method
become library nodes keyed ``lib:name/arity`` so every edge has an endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .nodes import AstNode, NodeKind
from .visitor import Visitor, walk


def method_key(name: str, arity: int) -> str:
    return f"{name}/{arity}"


@dataclass
class CallGraph:
    """Adjacency over declared and library method nodes."""

    nodes: set[str] = field(default_factory=set)
    edges: dict[str, set[str]] = field(default_factory=dict)
    declarations: dict[str, AstNode] = field(default_factory=dict)

    def add_node(self, key: str) -> None:
        self.nodes.add(key)
        self.edges.setdefault(key, set())

    def add_edge(self, src: str, dst: str) -> None:
        self.add_node(src)
        self.add_node(dst)
        self.edges[src].add(dst)

    def successors(self, key: str) -> set[str]:
        return self.edges.get(key, set())

    def declared_keys(self) -> set[str]:
        return set(self.declarations.keys())

    def has_cycle_among(self, keys: set[str]) -> bool:
        """True when any cycle (including a self-loop) exists within keys."""
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {k: 0 for k in keys}
        for root in keys:
            if color[root] != WHITE:
                continue
            stack: list[tuple[str, list[str]]] = [
                (root, [s for s in self.successors(root) if s in keys])
            ]
            color[root] = GRAY
            while stack:
                node, rest = stack[-1]
                if rest:
                    nxt = rest.pop()
                    if color[nxt] == GRAY:
                        return True
                    if color[nxt] == WHITE:
                        color[nxt] = GRAY
                        stack.append(
                            (nxt, [s for s in self.successors(nxt) if s in keys])
                        )
                else:
                    color[node] = BLACK
                    stack.pop()
        return False


class _DeclCollector(Visitor):
    def __init__(self) -> None:
        self.decls: list[tuple[str, AstNode]] = []
        self._anon_depth = 0

    def visit(self, node: AstNode) -> bool:
        if node.kind is NodeKind.OBJECT_CREATION and node.meta.get("anon"):
            self._anon_depth += 1
        if node.kind is NodeKind.METHOD_DECLARATION and self._anon_depth == 0:
            arity = node.meta.get("n_params", 0)
            self.decls.append((method_key(node.value or "", arity), node))
        return True

    def end_visit(self, node: AstNode) -> None:
        if node.kind is NodeKind.OBJECT_CREATION and node.meta.get("anon"):
            self._anon_depth -= 1


class _CallCollector(Visitor):
    """Collect invocation targets inside one method declaration's subtree."""

    def __init__(self, root: AstNode) -> None:
        self._root = root
        self.calls: list[tuple[str, int]] = []

    def visit(self, node: AstNode) -> bool:
        if node.kind is NodeKind.METHOD_DECLARATION and node is not self._root:
            return False  # nested declarations own their calls
        if node.kind is NodeKind.METHOD_INVOCATION:
            self.calls.append((node.value or "", node.meta.get("n_args", 0)))
        elif node.kind is NodeKind.OBJECT_CREATION:
            self.calls.append((node.value or "", node.meta.get("n_args", 0)))
        return True


def build_call_graph(root: AstNode) -> CallGraph:
    """Build the call graph of a compilation unit."""
    collector = _DeclCollector()
    walk(root, collector)
    graph = CallGraph()
    for key, decl in collector.decls:
        graph.add_node(key)
        # first declaration wins on duplicate name/arity (overload collision)
        graph.declarations.setdefault(key, decl)
    ctor_names = {
        decl.value for _, decl in collector.decls if decl.meta.get("ctor")
    }
    for key, decl in collector.decls:
        if graph.declarations.get(key) is not decl:
            continue
        caller = _CallCollector(decl)
        walk(decl, caller)
        for name, arity in caller.calls:
            target = method_key(name, arity)
            if target not in graph.declarations:
                if name in ctor_names:
                    # constructor call with unmatched arity still binds locally
                    candidates = [
                        k
                        for k in graph.declarations
                        if k.startswith(name + "/")
                        and graph.declarations[k].meta.get("ctor")
                    ]
                    if candidates:
                        target = sorted(candidates)[0]
                    else:
                        target = "lib:" + target
                else:
                    target = "lib:" + target
            graph.add_edge(key, target)
    return graph


def reachable_from_main(graph: CallGraph) -> set[str]:
    """Keys reachable from any declared main; all declared keys if none."""
    declared = graph.declared_keys()
    entries = {k for k in declared if k.split("/")[0] == "main"}
    if not entries:
        return set(graph.nodes)
    seen = set(entries)
    frontier = list(entries)
    while frontier:
        current = frontier.pop()
        for nxt in graph.successors(current):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def reachable_method_declarations(root: AstNode) -> list[AstNode]:
    """Declared methods reachable from main, in declaration order."""
    graph = build_call_graph(root)
    reachable = reachable_from_main(graph)
    ordered: list[AstNode] = []
    seen_ids: set[int] = set()
    collector = _DeclCollector()
    walk(root, collector)
    for key, decl in collector.decls:
        if graph.declarations.get(key) is not decl:
            continue
        if key in reachable and id(decl) not in seen_ids:
            ordered.append(decl)
            seen_ids.add(id(decl))
    return ordered
