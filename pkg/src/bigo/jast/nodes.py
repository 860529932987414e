"""AST node model for the Java subset.

Nodes carry a kind, an optional string value (identifier text, operator
symbol, literal text, ...), an ordered child list and a line span. A private
``meta`` dict holds printing hints (modifiers, raw type text, child-role
counts) that the pretty printer needs but that no analysis should depend on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Optional


class NodeKind(Enum):
    """Node taxonomy of the Java subset, JDT-flavoured label text."""

    CLASS_DECLARATION = "ClassDeclaration"
    METHOD_DECLARATION = "MethodDeclaration"
    VARIABLE_DECLARATION = "VariableDeclaration"
    BLOCK = "Block"

    IF = "IfStatement"
    WHILE_LOOP = "WhileStatement"
    FOR_LOOP = "ForStatement"
    DO_LOOP = "DoStatement"
    ENHANCED_FOR_LOOP = "EnhancedForStatement"
    SWITCH = "SwitchStatement"
    SWITCH_CASE = "SwitchCase"
    BREAK = "BreakStatement"
    CONTINUE = "ContinueStatement"
    RETURN = "ReturnStatement"
    THROW = "ThrowStatement"
    TRY = "TryStatement"
    CATCH_CLAUSE = "CatchClause"
    LABELED = "LabeledStatement"
    SYNCHRONIZED = "SynchronizedStatement"
    EXPRESSION_STATEMENT = "ExpressionStatement"
    EMPTY_STATEMENT = "EmptyStatement"
    STATEMENT_OTHER = "OtherStatement"

    METHOD_INVOCATION = "MethodInvocation"
    OBJECT_CREATION = "ObjectCreation"
    ASSIGNMENT = "Assignment"
    INFIX = "InfixExpression"
    PREFIX = "PrefixExpression"
    POSTFIX = "PostfixExpression"
    CONDITIONAL = "ConditionalExpression"
    CAST = "CastExpression"
    INSTANCEOF = "InstanceofExpression"
    ARRAY_ACCESS = "ArrayAccess"
    ARRAY_CREATION = "ArrayCreation"
    ARRAY_INITIALIZER = "ArrayInitializer"
    FIELD_ACCESS = "FieldAccess"
    METHOD_REFERENCE = "MethodReference"
    SIMPLE_NAME = "SimpleName"
    TYPE_REFERENCE = "TypeReference"
    LITERAL = "Literal"

    COMPILATION_UNIT = "CompilationUnit"

    @property
    def label(self) -> str:
        return self.value


# Loop kinds in the sense of the loop-count and nesting-depth features.
LOOP_KINDS = frozenset(
    {
        NodeKind.WHILE_LOOP,
        NodeKind.FOR_LOOP,
        NodeKind.DO_LOOP,
        NodeKind.ENHANCED_FOR_LOOP,
    }
)

# Kinds counted by the "number of statements" feature. Braces (Block) and
# CatchClause are structural and do not count; SwitchCase does.
# VariableDeclaration nodes count only when parsed at statement level
# (meta["stmt"] = True), not as parameters or for-init fragments.
STATEMENT_KINDS = frozenset(
    {
        NodeKind.IF,
        NodeKind.WHILE_LOOP,
        NodeKind.FOR_LOOP,
        NodeKind.DO_LOOP,
        NodeKind.ENHANCED_FOR_LOOP,
        NodeKind.SWITCH,
        NodeKind.SWITCH_CASE,
        NodeKind.BREAK,
        NodeKind.CONTINUE,
        NodeKind.RETURN,
        NodeKind.THROW,
        NodeKind.TRY,
        NodeKind.LABELED,
        NodeKind.SYNCHRONIZED,
        NodeKind.EXPRESSION_STATEMENT,
        NodeKind.EMPTY_STATEMENT,
        NodeKind.STATEMENT_OTHER,
    }
)

# Kinds whose value is an identifier chosen by the program author. These are
# the values an identifier-renaming transform is allowed to change.
NAME_BEARING_KINDS = frozenset(
    {
        NodeKind.SIMPLE_NAME,
        NodeKind.METHOD_DECLARATION,
        NodeKind.METHOD_INVOCATION,
        NodeKind.VARIABLE_DECLARATION,
        NodeKind.CLASS_DECLARATION,
        NodeKind.LABELED,
        NodeKind.BREAK,
        NodeKind.CONTINUE,
        NodeKind.METHOD_REFERENCE,
        NodeKind.STATEMENT_OTHER,
    }
)


@dataclass
class AstNode:
    """One node of the parsed tree.

    ``span`` is (start line, end line), 1-based, both inclusive. ``meta``
    carries printer bookkeeping only; structural consumers must restrict
    themselves to kind/value/children.
    """

    kind: NodeKind
    value: Optional[str] = None
    children: list["AstNode"] = field(default_factory=list)
    span: tuple[int, int] = (0, 0)
    meta: dict[str, Any] = field(default_factory=dict)

    def walk(self) -> Iterator["AstNode"]:
        """Preorder iteration over the subtree, self included."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def node_count(self) -> int:
        return sum(1 for _ in self.walk())

    def find_all(self, kind: NodeKind) -> list["AstNode"]:
        return [n for n in self.walk() if n.kind is kind]

    def __repr__(self) -> str:  # keep reprs short in test output
        val = f" {self.value!r}" if self.value is not None else ""
        return f"<{self.kind.label}{val} n={len(self.children)}>"


@dataclass(frozen=True)
class SourceUnit:
    """A source file to analyse: opaque id (file stem), text, optional label."""

    id: str
    text: str
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("SourceUnit id must be non-empty")


class ParseError(Exception):
    """Raised when a file cannot be segmented into top-level declarations."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def same_shape(a: AstNode, b: AstNode, compare_values: bool = True) -> bool:
    """Structural equality, ignoring spans and meta.

    With ``compare_values=False`` only kinds and arities must agree, which is
    the isomorphism-modulo-names check used by the renaming transform.
    """
    if a.kind is not b.kind or len(a.children) != len(b.children):
        return False
    if compare_values and a.value != b.value:
        return False
    return all(
        same_shape(x, y, compare_values) for x, y in zip(a.children, b.children)
    )


def shape_fingerprint(node: AstNode, with_values: bool = True) -> str:
    """Canonical string of the subtree; equal strings iff same_shape."""
    parts = [node.kind.name]
    if with_values and node.value is not None:
        parts.append(node.value)
    inner = ",".join(shape_fingerprint(c, with_values) for c in node.children)
    return "|".join(parts) + "(" + inner + ")"


def dump(node: AstNode, indent: int = 0) -> str:
    """Debug dump: one node per line with kind, value and span."""
    value = "" if node.value is None else f" {node.value!r}"
    lines = [f"{'  ' * indent}{node.kind.label}{value} @{node.span[0]}-{node.span[1]}"]
    for child in node.children:
        lines.append(dump(child, indent + 1))
    return "\n".join(lines)
