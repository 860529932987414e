"""Tokenizer for the Java subset.

Emits a flat token list with byte offsets so that source-level rewrites
(identifier renaming, input-call substitution) can splice text precisely.
``>`` is always emitted as a single-character token; the parser re-merges
adjacent ``>`` tokens into shift operators where an expression needs them.
This is the standard trick that keeps ``Map<String, List<Integer>>`` lexable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nodes import ParseError

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while""".split()
)

# Literal-like keywords are lexed as literals, not keywords.
WORD_LITERALS = frozenset({"true", "false", "null"})

# Multi-character operators, longest first. No ">"-initial entries: ">" is
# always a single token (see module docstring).
_MULTI_OPS = [
    "<<=", "...", "->", "::",
    "==", "!=", "<=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=",
    "&=", "|=", "^=", "<<",
]

_SINGLE_OPS = set("+-*/%=<>!&|^~?:;,.(){}[]@")

TOK_IDENT = "ident"
TOK_KEYWORD = "keyword"
TOK_NUMBER = "number"
TOK_STRING = "string"
TOK_CHAR = "char"
TOK_WORD_LITERAL = "word_literal"
TOK_OP = "op"
TOK_EOF = "eof"


@dataclass(frozen=True)
class Token:
    type: str
    text: str
    line: int
    col: int
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.text)

    def __repr__(self) -> str:
        return f"Token({self.type}, {self.text!r}, L{self.line})"


def tokenize(source: str) -> list[Token]:
    """Lex ``source`` into tokens. Raises ParseError on stray characters."""
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def advance(text: str) -> None:
        nonlocal i, line, col
        for ch in text:
            i += 1
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n\f":
            advance(ch)
            continue
        if ch == "/" and i + 1 < n:
            nxt = source[i + 1]
            if nxt == "/":
                j = source.find("\n", i)
                advance(source[i : (j if j != -1 else n)])
                continue
            if nxt == "*":
                j = source.find("*/", i + 2)
                if j == -1:
                    raise ParseError("unterminated block comment", line, col)
                advance(source[i : j + 2])
                continue
        start_line, start_col, start_off = line, col, i
        if ch.isalpha() or ch == "_" or ch == "$":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] in "_$"):
                j += 1
            text = source[i:j]
            if text in WORD_LITERALS:
                ttype = TOK_WORD_LITERAL
            elif text in KEYWORDS:
                ttype = TOK_KEYWORD
            else:
                ttype = TOK_IDENT
            tokens.append(Token(ttype, text, start_line, start_col, start_off))
            advance(text)
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            text = _scan_number(source, i)
            tokens.append(Token(TOK_NUMBER, text, start_line, start_col, start_off))
            advance(text)
            continue
        if ch == '"':
            text = _scan_quoted(source, i, '"', line, col)
            tokens.append(Token(TOK_STRING, text, start_line, start_col, start_off))
            advance(text)
            continue
        if ch == "'":
            text = _scan_quoted(source, i, "'", line, col)
            tokens.append(Token(TOK_CHAR, text, start_line, start_col, start_off))
            advance(text)
            continue
        matched = None
        for op in _MULTI_OPS:
            if source.startswith(op, i):
                matched = op
                break
        if matched is None and ch in _SINGLE_OPS:
            matched = ch
        if matched is None:
            raise ParseError(f"stray character {ch!r}", line, col)
        tokens.append(Token(TOK_OP, matched, start_line, start_col, start_off))
        advance(matched)

    tokens.append(Token(TOK_EOF, "", line, col, n))
    return tokens


def _scan_number(source: str, i: int) -> str:
    n = len(source)
    j = i
    if source.startswith(("0x", "0X", "0b", "0B"), i):
        j = i + 2
        while j < n and (source[j].isalnum() or source[j] == "_"):
            j += 1
        return source[i:j]
    seen_dot = False
    seen_exp = False
    while j < n:
        ch = source[j]
        if ch.isdigit() or ch == "_":
            j += 1
        elif ch == "." and not seen_dot and not seen_exp:
            # not a dot-dot or member access on a literal (1..x is not Java)
            seen_dot = True
            j += 1
        elif ch in "eE" and not seen_exp and j + 1 < n and (
            source[j + 1].isdigit() or source[j + 1] in "+-"
        ):
            seen_exp = True
            j += 2
        elif ch in "fFdDlL":
            j += 1
            break
        else:
            break
    return source[i:j]


def _scan_quoted(source: str, i: int, quote: str, line: int, col: int) -> str:
    n = len(source)
    j = i + 1
    while j < n:
        ch = source[j]
        if ch == "\\":
            j += 2
            continue
        if ch == quote:
            return source[i : j + 1]
        if ch == "\n":
            break
        j += 1
    raise ParseError(f"unterminated {quote} literal", line, col)
