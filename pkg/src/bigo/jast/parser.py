"""Recursive-descent parser for the Java subset.

Covers class/method declarations, the usual statement forms, and a
precedence-climbing expression grammar (invocations with qualified names,
object/array creation, assignments, binary/unary operators, array access).
Anything a statement-level parse cannot recognize is captured as one opaque
``OtherStatement`` leaf holding the raw source span, so a single exotic line
never discards the file.

Parsing is pure: one parser instance per call, no shared state.
"""

from __future__ import annotations

from .lexer import (
    TOK_CHAR,
    TOK_EOF,
    TOK_IDENT,
    TOK_KEYWORD,
    TOK_NUMBER,
    TOK_OP,
    TOK_STRING,
    TOK_WORD_LITERAL,
    Token,
    tokenize,
)
from .nodes import AstNode, NodeKind, ParseError, SourceUnit

MODIFIERS = frozenset(
    """public private protected static final abstract native synchronized
    transient volatile strictfp default""".split()
)

PRIMITIVE_TYPES = frozenset(
    "boolean byte char short int long float double void".split()
)

_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="})

# Binary precedence levels, loosest first. The ">"-family operators are
# re-merged from single ">" tokens at parse time.
_BINARY_LEVELS = [
    {"||"},
    {"&&"},
    {"|"},
    {"^"},
    {"&"},
    {"==", "!="},
    {"<", ">", "<=", ">=", "instanceof"},
    {"<<", ">>", ">>>"},
    {"+", "-"},
    {"*", "/", "%"},
]


def parse(source: SourceUnit | str) -> AstNode:
    """Parse a source unit (or bare text) into a compilation-unit AST."""
    text = source.text if isinstance(source, SourceUnit) else source
    if not text.strip():
        raise ParseError("empty source", 1, 1)
    tokens = tokenize(text)
    return _Parser(tokens, text).compilation_unit()


class _Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.toks = tokens
        self.src = source
        self.pos = 0

    # ---- token plumbing -------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        i = min(self.pos + ahead, len(self.toks) - 1)
        return self.toks[i]

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().type in (TOK_OP, TOK_KEYWORD)

    def at_type(self, ttype: str) -> bool:
        return self.peek().type == ttype

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        if tok.type != TOK_EOF:
            self.pos += 1
        return tok

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if not self.at(text):
            tok = self.peek()
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return self.advance()

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)

    def _span_from(self, start_tok: Token, end_pos: int | None = None) -> tuple[int, int]:
        end_idx = (end_pos if end_pos is not None else self.pos) - 1
        end_idx = max(0, min(end_idx, len(self.toks) - 1))
        return (start_tok.line, self.toks[end_idx].line)

    def _finish(self, node: AstNode, start_tok: Token) -> AstNode:
        end_idx = max(0, min(self.pos - 1, len(self.toks) - 1))
        node.span = (start_tok.line, self.toks[end_idx].line)
        node.meta["off"] = (start_tok.offset, self.toks[end_idx].end)
        return node

    # ---- top level -------------------------------------------------------

    def compilation_unit(self) -> AstNode:
        start = self.peek()
        root = AstNode(NodeKind.COMPILATION_UNIT)
        saw_type_decl = False
        while not self.at_type(TOK_EOF):
            if self.at("package") or self.at("import"):
                root.children.append(self._raw_to_semicolon(self.peek().text))
                continue
            if self.accept(";"):
                continue
            mark = self.pos
            try:
                root.children.append(self.type_declaration())
                saw_type_decl = True
                continue
            except ParseError:
                self.pos = mark
            raw = self._raw_statement()
            if raw is None:
                break
            root.children.append(raw)
        if not saw_type_decl:
            raise ParseError(
                "no top-level type declaration found", start.line, start.col
            )
        return self._finish(root, start)

    def type_declaration(self) -> AstNode:
        start = self.peek()
        annotations = self._annotations()
        mods = self._modifiers()
        kw = None
        for candidate in ("class", "interface", "enum"):
            if self.accept(candidate):
                kw = candidate
                break
        if kw is None:
            raise self.error("expected type declaration")
        name_tok = self.advance()
        if name_tok.type != TOK_IDENT:
            raise ParseError("expected type name", name_tok.line, name_tok.col)
        typeparams = self._balanced_angles_raw() if self.at("<") else ""
        heritage_start = self.pos
        while not self.at("{") and not self.at_type(TOK_EOF):
            self.advance()
        heritage = self._text_between(heritage_start, self.pos).strip()
        node = AstNode(
            NodeKind.CLASS_DECLARATION,
            value=name_tok.text,
            children=[
                AstNode(
                    NodeKind.SIMPLE_NAME,
                    value=name_tok.text,
                    span=(name_tok.line, name_tok.line),
                    meta={"off": (name_tok.offset, name_tok.end)},
                )
            ],
            meta={
                "kw": kw,
                "mods": mods,
                "annotations": annotations,
                "typeparams": typeparams,
                "heritage": heritage,
            },
        )
        self.expect("{")
        if kw == "enum":
            constants = self._enum_constants_raw()
            if constants is not None:
                node.children.append(constants)
        while not self.at("}") and not self.at_type(TOK_EOF):
            if self.accept(";"):
                continue
            member = self.class_member(name_tok.text)
            if member is None:
                break
            _append_member(node.children, member)
        self.expect("}")
        return self._finish(node, start)

    def class_member(self, class_name: str) -> AstNode | None:
        mark = self.pos
        try:
            return self.type_declaration()
        except ParseError:
            self.pos = mark
        try:
            return self._member_declaration(class_name)
        except ParseError:
            self.pos = mark
        return self._raw_statement()

    def _member_declaration(self, class_name: str) -> AstNode:
        start = self.peek()
        annotations = self._annotations()
        mods = self._modifiers()
        # static / instance initializer block
        if self.at("{"):
            block = self.block()
            block.meta["initializer"] = True
            block.meta["mods"] = mods
            return block
        typeparams = self._balanced_angles_raw() if self.at("<") else ""
        # constructor: bare name followed by "(" with no return type
        if (
            self.peek().type == TOK_IDENT
            and self.peek().text == class_name
            and self.peek(1).text == "("
        ):
            name_tok = self.advance()
            return self._method_rest(
                start, name_tok, None, mods, annotations, typeparams, ctor=True
            )
        rtype = self.parse_type()
        name_tok = self.advance()
        if name_tok.type != TOK_IDENT:
            raise ParseError("expected member name", name_tok.line, name_tok.col)
        if self.at("("):
            return self._method_rest(
                start, name_tok, rtype, mods, annotations, typeparams, ctor=False
            )
        if typeparams:
            raise self.error("type parameters on a field")
        return self._field_rest(start, name_tok, rtype, mods, annotations)

    def _method_rest(
        self,
        start: Token,
        name_tok: Token,
        rtype: AstNode | None,
        mods: list[str],
        annotations: list[str],
        typeparams: str,
        ctor: bool,
    ) -> AstNode:
        params = self._parameters()
        extra_dims = 0
        while self.at("["):
            self.expect("[")
            self.expect("]")
            extra_dims += 1
        throws_start = self.pos
        if self.accept("throws"):
            while not self.at("{") and not self.at(";") and not self.at_type(TOK_EOF):
                self.advance()
        throws = self._text_between(throws_start, self.pos).strip()
        children: list[AstNode] = []
        if rtype is not None:
            children.append(rtype)
        children.append(
            AstNode(
                NodeKind.SIMPLE_NAME,
                value=name_tok.text,
                span=(name_tok.line, name_tok.line),
                meta={"off": (name_tok.offset, name_tok.end)},
            )
        )
        children.extend(params)
        has_body = self.at("{")
        if has_body:
            children.append(self.block())
        else:
            self.expect(";")
        node = AstNode(
            NodeKind.METHOD_DECLARATION,
            value=name_tok.text,
            children=children,
            meta={
                "mods": mods,
                "annotations": annotations,
                "typeparams": typeparams,
                "throws": throws,
                "ctor": ctor,
                "n_params": len(params),
                "has_body": has_body,
                "extra_dims": extra_dims,
                "has_rtype": rtype is not None,
            },
        )
        return self._finish(node, start)

    def _field_rest(
        self,
        start: Token,
        first_name: Token,
        vtype: AstNode,
        mods: list[str],
        annotations: list[str],
    ) -> AstNode:
        # Multiple fragments become sibling VariableDeclaration members; the
        # caller wraps them in a synthetic container we immediately flatten.
        frags = [self._fragment(start, first_name, vtype, mods, annotations, field=True)]
        while self.accept(","):
            name_tok = self.advance()
            if name_tok.type != TOK_IDENT:
                raise ParseError("expected field name", name_tok.line, name_tok.col)
            frags.append(
                self._fragment(start, name_tok, vtype, mods, annotations, field=True)
            )
        self.expect(";")
        if len(frags) == 1:
            return frags[0]
        wrapper = AstNode(NodeKind.BLOCK, children=frags, meta={"fragments": True})
        return self._finish(wrapper, start)

    def _fragment(
        self,
        start: Token,
        name_tok: Token,
        vtype: AstNode,
        mods: list[str],
        annotations: list[str],
        field: bool = False,
        stmt: bool = False,
        forinit: bool = False,
    ) -> AstNode:
        dims = 0
        while self.at("["):
            self.expect("[")
            self.expect("]")
            dims += 1
        children = [
            _clone_type(vtype),
            AstNode(
                NodeKind.SIMPLE_NAME,
                value=name_tok.text,
                span=(name_tok.line, name_tok.line),
                meta={"off": (name_tok.offset, name_tok.end)},
            ),
        ]
        if self.accept("="):
            children.append(self.variable_initializer())
        node = AstNode(
            NodeKind.VARIABLE_DECLARATION,
            value=name_tok.text,
            children=children,
            meta={
                "mods": mods,
                "annotations": annotations,
                "dims": dims,
                "field": field,
                "stmt": stmt,
                "forinit": forinit,
                "single": False,
            },
        )
        return self._finish(node, start)

    def _parameters(self) -> list[AstNode]:
        self.expect("(")
        params: list[AstNode] = []
        while not self.at(")"):
            start = self.peek()
            annotations = self._annotations()
            mods = self._modifiers()
            ptype = self.parse_type()
            vararg = bool(self.accept("..."))
            name_tok = self.advance()
            if name_tok.type != TOK_IDENT:
                raise ParseError("expected parameter name", name_tok.line, name_tok.col)
            dims = 0
            while self.at("["):
                self.expect("[")
                self.expect("]")
                dims += 1
            node = AstNode(
                NodeKind.VARIABLE_DECLARATION,
                value=name_tok.text,
                children=[
                    ptype,
                    AstNode(
                        NodeKind.SIMPLE_NAME,
                        value=name_tok.text,
                        span=(name_tok.line, name_tok.line),
                        meta={"off": (name_tok.offset, name_tok.end)},
                    ),
                ],
                meta={
                    "mods": mods,
                    "annotations": annotations,
                    "dims": dims,
                    "vararg": vararg,
                    "single": True,
                    "field": False,
                    "stmt": False,
                },
            )
            params.append(self._finish(node, start))
            if not self.accept(","):
                break
        self.expect(")")
        return params

    # ---- statements ------------------------------------------------------

    def block(self) -> AstNode:
        start = self.peek()
        self.expect("{")
        node = AstNode(NodeKind.BLOCK)
        while not self.at("}") and not self.at_type(TOK_EOF):
            node.children.extend(self.statement())
        self.expect("}")
        return self._finish(node, start)

    def statement(self) -> list[AstNode]:
        """Parse one statement; local declarations may yield several nodes."""
        mark = self.pos
        try:
            return self._statement_inner()
        except ParseError:
            self.pos = mark
        raw = self._raw_statement()
        if raw is None:
            raise self.error("unterminated statement")
        return [raw]

    def _statement_inner(self) -> list[AstNode]:
        tok = self.peek()
        if self.at("{"):
            return [self.block()]
        if self.accept(";"):
            node = AstNode(NodeKind.EMPTY_STATEMENT, span=(tok.line, tok.line))
            node.meta["off"] = (tok.offset, tok.end)
            return [node]
        if self.at("if"):
            return [self._if_statement()]
        if self.at("while"):
            return [self._while_statement()]
        if self.at("do"):
            return [self._do_statement()]
        if self.at("for"):
            return [self._for_statement()]
        if self.at("switch"):
            return [self._switch_statement()]
        if self.at("try"):
            return [self._try_statement()]
        if self.at("synchronized"):
            return [self._synchronized_statement()]
        if self.at("break") or self.at("continue"):
            return [self._break_continue()]
        if self.at("return"):
            return [self._return_statement()]
        if self.at("throw"):
            return [self._throw_statement()]
        if (
            tok.type == TOK_IDENT
            and self.peek(1).text == ":"
            and self.peek(2).text != ":"
        ):
            return [self._labeled_statement()]
        decl = self._try_local_declaration()
        if decl is not None:
            return decl
        start = self.peek()
        expr = self.expression()
        self.expect(";")
        node = AstNode(NodeKind.EXPRESSION_STATEMENT, children=[expr])
        return [self._finish(node, start)]

    def _if_statement(self) -> AstNode:
        start = self.expect("if")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        then = self._body_statement()
        children = [cond, then]
        if self.accept("else"):
            children.append(self._body_statement())
        node = AstNode(NodeKind.IF, children=children)
        return self._finish(node, start)

    def _while_statement(self) -> AstNode:
        start = self.expect("while")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        body = self._body_statement()
        return self._finish(AstNode(NodeKind.WHILE_LOOP, children=[cond, body]), start)

    def _do_statement(self) -> AstNode:
        start = self.expect("do")
        body = self._body_statement()
        self.expect("while")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        self.expect(";")
        return self._finish(AstNode(NodeKind.DO_LOOP, children=[body, cond]), start)

    def _for_statement(self) -> AstNode:
        start = self.expect("for")
        self.expect("(")
        enhanced = self._try_enhanced_for_header()
        if enhanced is not None:
            var, iterable = enhanced
            body = self._body_statement()
            node = AstNode(
                NodeKind.ENHANCED_FOR_LOOP, children=[var, iterable, body]
            )
            return self._finish(node, start)
        init = self._for_init()
        self.expect(";")
        cond = None
        if not self.at(";"):
            cond = self.expression()
        self.expect(";")
        update: list[AstNode] = []
        if not self.at(")"):
            update.append(self.expression())
            while self.accept(","):
                update.append(self.expression())
        self.expect(")")
        body = self._body_statement()
        children = init + ([cond] if cond is not None else []) + update + [body]
        node = AstNode(
            NodeKind.FOR_LOOP,
            children=children,
            meta={
                "n_init": len(init),
                "has_cond": cond is not None,
                "n_update": len(update),
            },
        )
        return self._finish(node, start)

    def _try_enhanced_for_header(self) -> tuple[AstNode, AstNode] | None:
        mark = self.pos
        try:
            start = self.peek()
            self._annotations()
            mods = self._modifiers()
            vtype = self.parse_type()
            name_tok = self.advance()
            if name_tok.type != TOK_IDENT or not self.accept(":"):
                raise self.error("not an enhanced for")
            var = AstNode(
                NodeKind.VARIABLE_DECLARATION,
                value=name_tok.text,
                children=[
                    vtype,
                    AstNode(
                        NodeKind.SIMPLE_NAME,
                        value=name_tok.text,
                        span=(name_tok.line, name_tok.line),
                        meta={"off": (name_tok.offset, name_tok.end)},
                    ),
                ],
                meta={"mods": mods, "single": True, "field": False, "stmt": False,
                      "dims": 0},
            )
            self._finish(var, start)
            iterable = self.expression()
            self.expect(")")
            return var, iterable
        except ParseError:
            self.pos = mark
            return None

    def _for_init(self) -> list[AstNode]:
        if self.at(";"):
            return []
        mark = self.pos
        try:
            start = self.peek()
            mods = self._modifiers()
            vtype = self.parse_type()
            name_tok = self.advance()
            if name_tok.type != TOK_IDENT or self.peek().text not in ("=", ",", ";", "["):
                raise self.error("not a for-init declaration")
            frags = [
                self._fragment(start, name_tok, vtype, mods, [], forinit=True)
            ]
            while self.accept(","):
                name_tok = self.advance()
                if name_tok.type != TOK_IDENT:
                    raise self.error("expected variable name")
                frags.append(
                    self._fragment(start, name_tok, vtype, mods, [], forinit=True)
                )
            return frags
        except ParseError:
            self.pos = mark
        exprs = [self.expression()]
        while self.accept(","):
            exprs.append(self.expression())
        return exprs

    def _switch_statement(self) -> AstNode:
        start = self.expect("switch")
        self.expect("(")
        selector = self.expression()
        self.expect(")")
        self.expect("{")
        children = [selector]
        while not self.at("}") and not self.at_type(TOK_EOF):
            if self.at("case") or self.at("default"):
                children.append(self._switch_case())
                continue
            children.extend(self.statement())
        self.expect("}")
        return self._finish(AstNode(NodeKind.SWITCH, children=children), start)

    def _switch_case(self) -> AstNode:
        start = self.peek()
        if self.accept("default"):
            self.expect(":")
            node = AstNode(NodeKind.SWITCH_CASE, value="default", meta={"raw": "default:"})
            return self._finish(node, start)
        self.expect("case")
        label_start = self.pos
        depth = 0
        while not self.at_type(TOK_EOF):
            t = self.peek().text
            if t in "([":
                depth += 1
            elif t in ")]":
                depth -= 1
            elif t == ":" and depth == 0:
                break
            self.advance()
        raw = "case " + self._text_between(label_start, self.pos).strip() + ":"
        self.expect(":")
        node = AstNode(NodeKind.SWITCH_CASE, value="case", meta={"raw": raw})
        return self._finish(node, start)

    def _try_statement(self) -> AstNode:
        start = self.expect("try")
        resources = ""
        if self.at("("):
            res_start = self.pos
            self._skip_balanced("(", ")")
            resources = self._text_between(res_start, self.pos).strip()
        children = [self.block()]
        has_finally = False
        while self.at("catch"):
            children.append(self._catch_clause())
        if self.accept("finally"):
            children.append(self.block())
            has_finally = True
        node = AstNode(
            NodeKind.TRY,
            children=children,
            meta={"resources": resources, "has_finally": has_finally},
        )
        return self._finish(node, start)

    def _catch_clause(self) -> AstNode:
        start = self.expect("catch")
        self.expect("(")
        pstart = self.peek()
        self._modifiers()
        ptype = self.parse_type()
        # multi-catch: fold additional alternatives into the type text
        extra = []
        while self.accept("|"):
            extra.append(self.parse_type())
        if extra:
            text = ptype.meta.get("text", ptype.value or "")
            for alt in extra:
                text += " | " + alt.meta.get("text", alt.value or "")
            ptype.meta["text"] = text
        name_tok = self.advance()
        if name_tok.type != TOK_IDENT:
            raise ParseError("expected catch parameter", name_tok.line, name_tok.col)
        self.expect(")")
        var = AstNode(
            NodeKind.VARIABLE_DECLARATION,
            value=name_tok.text,
            children=[
                ptype,
                AstNode(
                    NodeKind.SIMPLE_NAME,
                    value=name_tok.text,
                    span=(name_tok.line, name_tok.line),
                    meta={"off": (name_tok.offset, name_tok.end)},
                ),
            ],
            meta={"single": True, "field": False, "stmt": False, "dims": 0, "mods": []},
        )
        self._finish(var, pstart)
        body = self.block()
        return self._finish(AstNode(NodeKind.CATCH_CLAUSE, children=[var, body]), start)

    def _synchronized_statement(self) -> AstNode:
        start = self.expect("synchronized")
        self.expect("(")
        expr = self.expression()
        self.expect(")")
        body = self.block()
        return self._finish(AstNode(NodeKind.SYNCHRONIZED, children=[expr, body]), start)

    def _break_continue(self) -> AstNode:
        start = self.advance()
        kind = NodeKind.BREAK if start.text == "break" else NodeKind.CONTINUE
        label = None
        if self.peek().type == TOK_IDENT:
            label = self.advance().text
        self.expect(";")
        return self._finish(AstNode(kind, value=label), start)

    def _return_statement(self) -> AstNode:
        start = self.expect("return")
        children = []
        if not self.at(";"):
            children.append(self.expression())
        self.expect(";")
        return self._finish(AstNode(NodeKind.RETURN, children=children), start)

    def _throw_statement(self) -> AstNode:
        start = self.expect("throw")
        expr = self.expression()
        self.expect(";")
        return self._finish(AstNode(NodeKind.THROW, children=[expr]), start)

    def _labeled_statement(self) -> AstNode:
        start = self.advance()
        self.expect(":")
        inner = self._body_statement()
        node = AstNode(NodeKind.LABELED, value=start.text, children=[inner])
        return self._finish(node, start)

    def _body_statement(self) -> AstNode:
        """A single statement in body position (then/else branch, loop body)."""
        stmts = self.statement()
        if len(stmts) == 1:
            return stmts[0]
        # `for(...) int a, b;` is not legal Java; wrap defensively.
        return AstNode(NodeKind.BLOCK, children=stmts, span=stmts[0].span)

    def _try_local_declaration(self) -> list[AstNode] | None:
        mark = self.pos
        try:
            start = self.peek()
            annotations = self._annotations()
            mods = self._modifiers()
            vtype = self.parse_type()
            name_tok = self.advance()
            if name_tok.type != TOK_IDENT or self.peek().text not in ("=", ",", ";", "["):
                raise self.error("not a declaration")
            frags = [
                self._fragment(start, name_tok, vtype, mods, annotations, stmt=True)
            ]
            while self.accept(","):
                name_tok = self.advance()
                if name_tok.type != TOK_IDENT:
                    raise self.error("expected variable name")
                frags.append(
                    self._fragment(start, name_tok, vtype, mods, annotations, stmt=True)
                )
            self.expect(";")
            return frags
        except ParseError:
            self.pos = mark
            return None

    # ---- expressions -----------------------------------------------------

    def expression(self) -> AstNode:
        return self._assignment()

    def _assignment(self) -> AstNode:
        start = self.peek()
        lam = self._try_lambda()
        if lam is not None:
            return lam
        left = self._conditional()
        op = self._assignment_operator()
        if op is None:
            return left
        right = self._assignment()
        node = AstNode(NodeKind.ASSIGNMENT, value=op, children=[left, right])
        return self._finish(node, start)

    def _assignment_operator(self) -> str | None:
        t = self.peek()
        if t.type != TOK_OP:
            return None
        if t.text in _ASSIGN_OPS:
            self.advance()
            return t.text
        # >>= and >>>= arrive as adjacent single '>' tokens plus '='
        if t.text == ">":
            merged = self._peek_gt_run()
            if merged in (">>=", ">>>="):
                for _ in range(len(merged)):
                    self.advance()
                return merged
        return None

    def _peek_gt_run(self) -> str:
        """Text of the maximal adjacent run starting at a '>' token."""
        run = ">"
        k = 1
        prev = self.peek()
        while True:
            nxt = self.peek(k)
            if nxt.type != TOK_OP or nxt.offset != prev.end:
                break
            if nxt.text == ">" and run in (">", ">>"):
                run += ">"
            elif nxt.text == "=" and run in (">", ">>", ">>>"):
                run += "="
                break
            else:
                break
            prev = nxt
            k += 1
        return run

    def _conditional(self) -> AstNode:
        start = self.peek()
        cond = self._binary(0)
        if not self.at("?"):
            return cond
        self.expect("?")
        then = self.expression()
        self.expect(":")
        other = self._conditional()
        node = AstNode(NodeKind.CONDITIONAL, children=[cond, then, other])
        return self._finish(node, start)

    def _binary(self, level: int) -> AstNode:
        if level >= len(_BINARY_LEVELS):
            return self._unary()
        ops = _BINARY_LEVELS[level]
        start = self.peek()
        left = self._binary(level + 1)
        while True:
            op = self._match_binary_op(ops)
            if op is None:
                return left
            if op == "instanceof":
                rtype = self.parse_type()
                node = AstNode(
                    NodeKind.INSTANCEOF, value="instanceof", children=[left, rtype]
                )
                left = self._finish(node, start)
                continue
            right = self._binary(level + 1)
            node = AstNode(NodeKind.INFIX, value=op, children=[left, right])
            left = self._finish(node, start)

    def _match_binary_op(self, ops: set[str]) -> str | None:
        t = self.peek()
        if t.text == "instanceof" and "instanceof" in ops:
            self.advance()
            return "instanceof"
        if t.type != TOK_OP:
            return None
        if t.text == ">":
            run = self._peek_gt_run()
            if run in (">>", ">>>"):
                if run in ops:
                    for _ in range(len(run)):
                        self.advance()
                    return run
                return None
            if run in (">=",):
                if ">=" in ops:
                    self.advance()
                    self.advance()
                    return ">="
                return None
            if ">" in ops and run == ">":
                self.advance()
                return ">"
            return None
        if t.text in ops and t.text in ("<", "<="):
            self.advance()
            return t.text
        if t.text in ops:
            self.advance()
            return t.text
        return None

    def _unary(self) -> AstNode:
        start = self.peek()
        if self.at("++") or self.at("--") or self.at("+") or self.at("-") \
                or self.at("!") or self.at("~"):
            op = self.advance().text
            operand = self._unary()
            node = AstNode(NodeKind.PREFIX, value=op, children=[operand])
            return self._finish(node, start)
        cast = self._try_cast()
        if cast is not None:
            return cast
        return self._postfix()

    def _try_cast(self) -> AstNode | None:
        if not self.at("("):
            return None
        mark = self.pos
        try:
            start = self.peek()
            self.expect("(")
            ctype = self.parse_type()
            self.expect(")")
            nxt = self.peek()
            text = ctype.meta.get("text", "")
            # a bare (possibly dotted) name could equally be an expression,
            # so "(name) - x" stays a parenthesized expression, while casts
            # to primitives, generics, and arrays accept unary +/- operands
            name_like = (
                ctype.value not in PRIMITIVE_TYPES
                and not ctype.children
                and "<" not in text
                and "[" not in text
            )
            starts_operand = (
                nxt.type in (TOK_IDENT, TOK_NUMBER, TOK_STRING, TOK_CHAR,
                             TOK_WORD_LITERAL)
                or nxt.text in ("(", "!", "~", "new", "this", "super")
            )
            ambiguous_ok = nxt.text in ("+", "-", "++", "--") and not name_like
            if not starts_operand and not ambiguous_ok:
                raise self.error("not a cast")
            operand = self._unary()
            node = AstNode(NodeKind.CAST, children=[ctype, operand])
            return self._finish(node, start)
        except ParseError:
            self.pos = mark
            return None

    def _postfix(self) -> AstNode:
        start = self.peek()
        node = self._primary()
        while True:
            if self.at("."):
                # qualified access or invocation
                self.expect(".")
                name_tok = self.advance()
                if name_tok.type not in (TOK_IDENT, TOK_KEYWORD):
                    raise ParseError(
                        "expected member name", name_tok.line, name_tok.col
                    )
                name_node = AstNode(
                    NodeKind.SIMPLE_NAME,
                    value=name_tok.text,
                    span=(name_tok.line, name_tok.line),
                    meta={"off": (name_tok.offset, name_tok.end)},
                )
                if self.at("("):
                    args = self._arguments()
                    inv = AstNode(
                        NodeKind.METHOD_INVOCATION,
                        value=name_tok.text,
                        children=[node, name_node] + args,
                        meta={"qualified": True, "n_args": len(args)},
                    )
                    node = self._finish(inv, start)
                else:
                    fa = AstNode(
                        NodeKind.FIELD_ACCESS, children=[node, name_node]
                    )
                    node = self._finish(fa, start)
                continue
            if self.at("["):
                self.expect("[")
                index = self.expression()
                self.expect("]")
                aa = AstNode(NodeKind.ARRAY_ACCESS, children=[node, index])
                node = self._finish(aa, start)
                continue
            if self.at("::"):
                self.expect("::")
                name_tok = self.advance()
                ref_text = _expr_name_text(node) + "::" + name_tok.text
                mr = AstNode(NodeKind.METHOD_REFERENCE, value=ref_text)
                node = self._finish(mr, start)
                continue
            if self.at("++") or self.at("--"):
                op = self.advance().text
                pf = AstNode(NodeKind.POSTFIX, value=op, children=[node])
                node = self._finish(pf, start)
                continue
            return node

    def _primary(self) -> AstNode:
        tok = self.peek()
        if tok.type in (TOK_NUMBER, TOK_STRING, TOK_CHAR, TOK_WORD_LITERAL):
            self.advance()
            node = AstNode(NodeKind.LITERAL, value=tok.text, span=(tok.line, tok.line))
            node.meta["off"] = (tok.offset, tok.end)
            return node
        if tok.text in ("this", "super"):
            self.advance()
            node = AstNode(
                NodeKind.SIMPLE_NAME, value=tok.text, span=(tok.line, tok.line)
            )
            node.meta["off"] = (tok.offset, tok.end)
            if self.at("("):  # this(...) / super(...) constructor call
                args = self._arguments()
                inv = AstNode(
                    NodeKind.METHOD_INVOCATION,
                    value=tok.text,
                    children=[node] + args,
                    meta={"qualified": False, "n_args": len(args), "ctor_call": True},
                )
                return self._finish(inv, tok)
            return node
        if tok.type == TOK_IDENT:
            self.advance()
            name = AstNode(
                NodeKind.SIMPLE_NAME, value=tok.text, span=(tok.line, tok.line)
            )
            name.meta["off"] = (tok.offset, tok.end)
            if self.at("("):
                args = self._arguments()
                inv = AstNode(
                    NodeKind.METHOD_INVOCATION,
                    value=tok.text,
                    children=[name] + args,
                    meta={"qualified": False, "n_args": len(args)},
                )
                return self._finish(inv, tok)
            return name
        if self.at("("):
            self.expect("(")
            inner = self.expression()
            self.expect(")")
            return inner
        if self.at("new"):
            return self._creation()
        if self.at("{"):
            return self._array_initializer()
        if tok.type == TOK_KEYWORD and tok.text in PRIMITIVE_TYPES:
            # e.g. int.class / int[].class
            ctype = self.parse_type()
            return ctype
        raise self.error(f"unexpected token {tok.text!r} in expression")

    def _creation(self) -> AstNode:
        start = self.expect("new")
        base = self.parse_type(allow_dims=False)
        if self.at("["):
            dims_exprs: list[AstNode] = []
            n_dims = 0
            while self.at("["):
                self.expect("[")
                if not self.at("]"):
                    dims_exprs.append(self.expression())
                self.expect("]")
                n_dims += 1
            children: list[AstNode] = [base] + dims_exprs
            has_init = False
            if self.at("{"):
                children.append(self._array_initializer())
                has_init = True
            node = AstNode(
                NodeKind.ARRAY_CREATION,
                value=base.value,
                children=children,
                meta={
                    "n_dims": n_dims,
                    "n_dim_exprs": len(dims_exprs),
                    "has_init": has_init,
                },
            )
            return self._finish(node, start)
        args = self._arguments() if self.at("(") else []
        children = [base] + args
        anon = False
        if self.at("{"):
            anon = True
            self.expect("{")
            while not self.at("}") and not self.at_type(TOK_EOF):
                if self.accept(";"):
                    continue
                member = self.class_member(base.value or "")
                if member is None:
                    break
                _append_member(children, member)
            self.expect("}")
        node = AstNode(
            NodeKind.OBJECT_CREATION,
            value=base.value,
            children=children,
            meta={"n_args": len(args), "anon": anon},
        )
        return self._finish(node, start)

    def _array_initializer(self) -> AstNode:
        start = self.expect("{")
        node = AstNode(NodeKind.ARRAY_INITIALIZER)
        while not self.at("}"):
            node.children.append(self.variable_initializer())
            if not self.accept(","):
                break
        self.expect("}")
        return self._finish(node, start)

    def variable_initializer(self) -> AstNode:
        if self.at("{"):
            return self._array_initializer()
        return self.expression()

    def _arguments(self) -> list[AstNode]:
        self.expect("(")
        args: list[AstNode] = []
        while not self.at(")"):
            args.append(self.expression())
            if not self.accept(","):
                break
        self.expect(")")
        return args

    def _try_lambda(self) -> AstNode | None:
        """Lambdas are captured opaquely as OtherStatement leaves."""
        tok = self.peek()
        is_lambda = False
        if tok.type == TOK_IDENT and self.peek(1).text == "->":
            is_lambda = True
        elif self.at("("):
            depth = 0
            k = 0
            while True:
                t = self.peek(k)
                if t.type == TOK_EOF:
                    break
                if t.text == "(":
                    depth += 1
                elif t.text == ")":
                    depth -= 1
                    if depth == 0:
                        is_lambda = self.peek(k + 1).text == "->"
                        break
                k += 1
        if not is_lambda:
            return None
        start = self.peek()
        start_off = start.offset
        if self.at("("):
            self._skip_balanced("(", ")")
        else:
            self.advance()
        self.expect("->")
        if self.at("{"):
            self._skip_balanced("{", "}")
        else:
            self.expression()  # parsed only to locate the end of the body
        end_off = self.toks[self.pos - 1].end
        node = AstNode(
            NodeKind.STATEMENT_OTHER,
            value="lambda",
            meta={"raw": self.src[start_off:end_off]},
        )
        return self._finish(node, start)

    # ---- types -----------------------------------------------------------

    def parse_type(self, allow_dims: bool = True) -> AstNode:
        start = self.peek()
        if start.type == TOK_KEYWORD and start.text in PRIMITIVE_TYPES:
            self.advance()
            base_name = start.text
            segments = [start.text]
        elif start.type == TOK_IDENT:
            self.advance()
            segments = [start.text]
            while (
                self.at(".")
                and self.peek(1).type == TOK_IDENT
                and self.peek(2).text != "("
            ):
                self.expect(".")
                segments.append(self.advance().text)
            base_name = segments[-1]
        elif start.text == "?":
            self.advance()
            segments = ["?"]
            base_name = "?"
            node = AstNode(NodeKind.TYPE_REFERENCE, value="?", meta={"text": "?"})
            if self.at("extends") or self.at("super"):
                bound_kw = self.advance().text
                bound = self.parse_type()
                node.children.append(bound)
                node.meta["text"] = f"? {bound_kw} " + bound.meta.get("text", "")
                node.meta["bound_kw"] = bound_kw
            return self._finish(node, start)
        else:
            raise self.error("expected type")
        text = ".".join(segments)
        args: list[AstNode] = []
        if self.at("<"):
            args, args_text = self._type_arguments()
            text += args_text
        dims = 0
        if allow_dims:
            while self.at("[") and self.peek(1).text == "]":
                self.expect("[")
                self.expect("]")
                dims += 1
                text += "[]"
        node = AstNode(
            NodeKind.TYPE_REFERENCE,
            value=base_name,
            children=args,
            meta={"text": text, "dims": dims},
        )
        return self._finish(node, start)

    def _type_arguments(self) -> tuple[list[AstNode], str]:
        self.expect("<")
        if self.at(">"):  # diamond
            self.advance()
            return [], "<>"
        args = [self.parse_type()]
        while self.accept(","):
            args.append(self.parse_type())
        if not self.at(">"):
            raise self.error("expected '>' closing type arguments")
        self.advance()
        text = "<" + ", ".join(a.meta.get("text", a.value or "") for a in args) + ">"
        return args, text

    # ---- raw fallbacks and small helpers ----------------------------------

    def _annotations(self) -> list[str]:
        result = []
        while self.at("@"):
            start = self.pos
            self.expect("@")
            tok = self.advance()
            if tok.type not in (TOK_IDENT, TOK_KEYWORD):
                raise ParseError("expected annotation name", tok.line, tok.col)
            while self.at(".") and self.peek(1).type == TOK_IDENT:
                self.advance()
                self.advance()
            if self.at("("):
                self._skip_balanced("(", ")")
            result.append(self._text_between(start, self.pos))
        return result

    def _modifiers(self) -> list[str]:
        mods = []
        while self.peek().type == TOK_KEYWORD and self.peek().text in MODIFIERS:
            mods.append(self.advance().text)
            # annotations may be interleaved with modifiers
            if self.at("@"):
                self._annotations()
        return mods

    def _skip_balanced(self, open_text: str, close_text: str) -> None:
        tok = self.expect(open_text)
        depth = 1
        while depth > 0:
            t = self.advance()
            if t.type == TOK_EOF:
                raise ParseError(
                    f"unbalanced {open_text!r}", tok.line, tok.col
                )
            if t.text == open_text:
                depth += 1
            elif t.text == close_text:
                depth -= 1

    def _balanced_angles_raw(self) -> str:
        start = self.pos
        self.expect("<")
        depth = 1
        while depth > 0:
            t = self.advance()
            if t.type == TOK_EOF:
                raise self.error("unbalanced '<'")
            if t.text == "<":
                depth += 1
            elif t.text == ">":
                depth -= 1
        return self._text_between(start, self.pos)

    def _raw_to_semicolon(self, tag: str) -> AstNode:
        start = self.peek()
        start_off = start.offset
        while not self.at_type(TOK_EOF):
            t = self.advance()
            if t.text == ";":
                break
        end_off = self.toks[self.pos - 1].end
        node = AstNode(
            NodeKind.STATEMENT_OTHER,
            value=tag,
            meta={"raw": self.src[start_off:end_off]},
        )
        return self._finish(node, start)

    def _raw_statement(self) -> AstNode | None:
        """Consume an unparseable region up to a statement boundary."""
        start = self.peek()
        if start.type == TOK_EOF or start.text == "}":
            return None
        start_off = start.offset
        depth = 0
        consumed = False
        while not self.at_type(TOK_EOF):
            t = self.peek()
            if t.text in ("(", "[", "{"):
                depth += 1
            elif t.text in (")", "]"):
                depth -= 1
                if depth < 0:
                    break
            elif t.text == "}":
                depth -= 1
                if depth < 0:
                    break
                if depth == 0:
                    self.advance()
                    consumed = True
                    # brace-bodied construct complete unless a tail follows
                    if not (self.at("else") or self.at("catch")
                            or self.at("finally") or self.at("while")):
                        break
                    continue
            elif t.text == ";" and depth == 0:
                self.advance()
                consumed = True
                break
            self.advance()
            consumed = True
        if not consumed:
            return None
        end_off = self.toks[self.pos - 1].end
        node = AstNode(
            NodeKind.STATEMENT_OTHER,
            value=start.text if start.type in (TOK_IDENT, TOK_KEYWORD) else "raw",
            meta={"raw": self.src[start_off:end_off]},
        )
        return self._finish(node, start)

    def _enum_constants_raw(self) -> AstNode | None:
        """Capture an enum's constant list (everything up to ';' or '}')."""
        start = self.peek()
        if start.text in ("}", ";"):
            self.accept(";")
            return None
        start_off = start.offset
        depth = 0
        while not self.at_type(TOK_EOF):
            t = self.peek()
            if t.text in ("(", "[", "{"):
                depth += 1
            elif t.text in (")", "]", "}"):
                if t.text == "}" and depth == 0:
                    break
                depth -= 1
            elif t.text == ";" and depth == 0:
                break
            self.advance()
        end_off = self.toks[self.pos - 1].end if self.pos > 0 else start_off
        self.accept(";")
        node = AstNode(
            NodeKind.STATEMENT_OTHER,
            value="enum_constants",
            meta={"raw": self.src[start_off:end_off]},
        )
        return self._finish(node, start)

    def _text_between(self, start_pos: int, end_pos: int) -> str:
        if start_pos >= end_pos:
            return ""
        a = self.toks[start_pos].offset
        b = self.toks[end_pos - 1].end
        return self.src[a:b]


def _append_member(children: list[AstNode], member: AstNode) -> None:
    """Flatten the synthetic wrapper around multi-fragment field declarations."""
    if member.kind is NodeKind.BLOCK and member.meta.get("fragments"):
        children.extend(member.children)
    else:
        children.append(member)


def _clone_type(node: AstNode) -> AstNode:
    copy = AstNode(
        kind=node.kind,
        value=node.value,
        children=[_clone_type(c) for c in node.children],
        span=node.span,
        meta=dict(node.meta),
    )
    return copy


def _expr_name_text(node: AstNode) -> str:
    if node.kind in (NodeKind.SIMPLE_NAME, NodeKind.TYPE_REFERENCE):
        return node.value or ""
    if node.kind is NodeKind.FIELD_ACCESS:
        return _expr_name_text(node.children[0]) + "." + (node.children[1].value or "")
    return node.value or ""
