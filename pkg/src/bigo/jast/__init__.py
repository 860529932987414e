"""Java-subset AST: lexer, parser, printer, traversal, call graph."""

from .callgraph import (
    CallGraph,
    build_call_graph,
    method_key,
    reachable_from_main,
    reachable_method_declarations,
)
from .lexer import Token, tokenize
from .nodes import (
    LOOP_KINDS,
    NAME_BEARING_KINDS,
    STATEMENT_KINDS,
    AstNode,
    NodeKind,
    ParseError,
    SourceUnit,
    dump,
    same_shape,
    shape_fingerprint,
)
from .parser import parse
from .printer import print_expression, print_statement, print_unit
from .visitor import Visitor, traverse, walk

__all__ = [
    "AstNode",
    "CallGraph",
    "LOOP_KINDS",
    "NAME_BEARING_KINDS",
    "NodeKind",
    "ParseError",
    "STATEMENT_KINDS",
    "SourceUnit",
    "Token",
    "Visitor",
    "build_call_graph",
    "dump",
    "method_key",
    "parse",
    "print_expression",
    "print_statement",
    "print_unit",
    "reachable_from_main",
    "reachable_method_declarations",
    "same_shape",
    "shape_fingerprint",
    "tokenize",
    "traverse",
    "walk",
]
