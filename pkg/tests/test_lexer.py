"""Tokenizer behavior: token typing, offsets, comments, and the single-> rule."""

import pytest

from bigo.jast.lexer import (
    TOK_CHAR,
    TOK_EOF,
    TOK_IDENT,
    TOK_KEYWORD,
    TOK_NUMBER,
    TOK_OP,
    TOK_STRING,
    TOK_WORD_LITERAL,
    tokenize,
)
from bigo.jast.nodes import ParseError


def kinds(source):
    return [(t.type, t.text) for t in tokenize(source)[:-1]]


def test_simple_statement():
    assert kinds("int x = 42;") == [
        (TOK_KEYWORD, "int"),
        (TOK_IDENT, "x"),
        (TOK_OP, "="),
        (TOK_NUMBER, "42"),
        (TOK_OP, ";"),
    ]


def test_ends_with_eof():
    tokens = tokenize("x")
    assert tokens[-1].type == TOK_EOF
    assert tokens[-1].offset == 1


def test_offsets_allow_splicing():
    source = "foo(barBaz, 12)"
    for tok in tokenize(source)[:-1]:
        assert source[tok.offset : tok.end] == tok.text


def test_closing_angles_are_single_tokens():
    texts = [t.text for t in tokenize("Map<String, List<Integer>> m;")]
    assert texts.count(">") == 2
    assert ">>" not in texts


def test_shift_assign_still_lexes_as_singles():
    # the parser, not the lexer, re-merges adjacent > into >> and >>=
    texts = [t.text for t in tokenize("x >>= 2")[:-1]]
    assert texts == ["x", ">", ">", "=", "2"]


def test_line_comment_skipped():
    assert kinds("a // trailing\nb") == [(TOK_IDENT, "a"), (TOK_IDENT, "b")]


def test_block_comment_skipped_and_lines_tracked():
    tokens = tokenize("a /* one\ntwo */ b")
    assert [t.text for t in tokens[:-1]] == ["a", "b"]
    assert tokens[1].line == 2


def test_unterminated_block_comment():
    with pytest.raises(ParseError):
        tokenize("/* never closed")


def test_string_with_escapes():
    (tok,) = tokenize(r'"a\"b\\"')[:-1]
    assert tok.type == TOK_STRING
    assert tok.text == r'"a\"b\\"'


def test_char_literal():
    (tok,) = tokenize(r"'\n'")[:-1]
    assert tok.type == TOK_CHAR


def test_unterminated_string():
    with pytest.raises(ParseError):
        tokenize('"open')


def test_word_literals_are_not_keywords():
    assert kinds("true false null") == [
        (TOK_WORD_LITERAL, "true"),
        (TOK_WORD_LITERAL, "false"),
        (TOK_WORD_LITERAL, "null"),
    ]


@pytest.mark.parametrize(
    "literal",
    ["0x1F", "0b1010", "3.14", "1e9", "2.5e-3", "10L", "1.5f", "1_000_000"],
)
def test_number_forms(literal):
    (tok,) = tokenize(literal)[:-1]
    assert tok.type == TOK_NUMBER
    assert tok.text == literal


def test_stray_character_raises_with_position():
    with pytest.raises(ParseError) as err:
        tokenize("int x = `;")
    assert err.value.line == 1
    assert err.value.column == 9


def test_garbage_input_rejected():
    with pytest.raises(ParseError):
        tokenize("#!/bin/sh")


def test_arrow_and_method_reference_ops():
    assert (TOK_OP, "->") in kinds("x -> x")
    assert (TOK_OP, "::") in kinds("String::valueOf")
