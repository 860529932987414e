"""Depth-first AST traversal with enter/exit hooks.

Counting visitors override ``visit`` for the kinds they care about; returning
False from ``visit`` skips the node's subtree. ``end_visit`` fires after the
children, which is how scoped counters (nesting depth, per-method state) are
implemented.
"""

from __future__ import annotations

from collections.abc import Callable

from .nodes import AstNode


class Visitor:
    """Base visitor; subclasses override visit/end_visit as needed."""

    def visit(self, node: AstNode) -> bool:
        return True

    def end_visit(self, node: AstNode) -> None:
        return None


def walk(node: AstNode, visitor: Visitor) -> None:
    """Pre-order DFS: visit, children (unless skipped), then end_visit.

    end_visit always fires, even for skipped subtrees, so enter/exit hooks
    stay paired.
    """
    stack: list[tuple[AstNode, bool]] = [(node, False)]
    while stack:
        current, exiting = stack.pop()
        if exiting:
            visitor.end_visit(current)
            continue
        descend = visitor.visit(current)
        stack.append((current, True))
        if not descend:
            continue
        for child in reversed(current.children):
            stack.append((child, False))


def traverse(
    node: AstNode,
    on_enter: Callable[[AstNode], bool | None] | None = None,
    on_exit: Callable[[AstNode], None] | None = None,
) -> None:
    """Functional counterpart of walk; on_enter returning False skips children."""

    class _Fn(Visitor):
        def visit(self, n: AstNode) -> bool:
            if on_enter is None:
                return True
            return on_enter(n) is not False

        def end_visit(self, n: AstNode) -> None:
            if on_exit is not None:
                on_exit(n)

    walk(node, _Fn())
