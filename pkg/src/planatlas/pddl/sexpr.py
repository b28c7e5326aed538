"""Tokenizer and s-expression reader for PDDL sources.

No external dependencies -- a hand-rolled tokenizer that tracks 1-based
line/column positions so parse errors can point at the offending token.
Identifiers are lower-cased (PDDL is case-insensitive); ``;`` starts a
comment running to end of line.
"""

from __future__ import annotations

import re

from ..errors import PddlSyntaxError

_NAME_RE = re.compile(r"[A-Za-z0-9_:?=&.+\-]+")


class Symbol(str):
    """An atom token; a plain str that remembers where it came from."""

    line: int
    column: int

    def __new__(cls, value: str, line: int, column: int):
        obj = super().__new__(cls, value)
        obj.line = line
        obj.column = column
        return obj


class SExpr(list):
    """A parenthesized expression; a list of Symbol | SExpr."""

    line: int
    column: int

    def __init__(self, items, line: int, column: int):
        super().__init__(items)
        self.line = line
        self.column = column

    @property
    def head(self) -> str:
        return self[0] if self else ""


def tokenize(text: str) -> list[Symbol]:
    tokens: list[Symbol] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "()":
            tokens.append(Symbol(ch, line, col))
            i += 1
            col += 1
            continue
        m = _NAME_RE.match(text, i)
        if not m:
            raise PddlSyntaxError(f"unexpected character {ch!r}", line, col)
        tokens.append(Symbol(m.group(0).lower(), line, col))
        col += m.end() - i
        i = m.end()
    return tokens


def read(text: str) -> SExpr:
    """Read a single top-level s-expression (the (define ...) form)."""
    tokens = tokenize(text)
    if not tokens:
        raise PddlSyntaxError("empty input", 1, 1)
    expr, rest = _read_expr(tokens, 0)
    if rest != len(tokens):
        t = tokens[rest]
        raise PddlSyntaxError(f"trailing content {str(t)!r}", t.line, t.column)
    if not isinstance(expr, SExpr):
        raise PddlSyntaxError("expected a parenthesized form", expr.line, expr.column)
    return expr


def _read_expr(tokens: list[Symbol], pos: int):
    t = tokens[pos]
    if t == "(":
        items = []
        start = t
        pos += 1
        while True:
            if pos >= len(tokens):
                raise PddlSyntaxError("unbalanced '('", start.line, start.column)
            if tokens[pos] == ")":
                return SExpr(items, start.line, start.column), pos + 1
            item, pos = _read_expr(tokens, pos)
            items.append(item)
    if t == ")":
        raise PddlSyntaxError("unbalanced ')'", t.line, t.column)
    return t, pos + 1
