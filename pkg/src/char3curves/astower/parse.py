"""Tokenizer and recursive-descent parser for curve-file expressions.

Grammar: identifiers, integer literals, ``+ - * / ^ ( )``.  Juxtaposition
such as ``X(Y^3-Y)`` is read as multiplication.  Expressions parse to a small
tuple AST that :func:`evaluate` turns into (numerator, denominator) MPolys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from ..mpoly import MPoly


class CurveSyntaxError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else (f"col {col}: " if col else "")
        super().__init__(where + msg)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(->|[-+*/^()=,:\[\]]))")


@dataclass(frozen=True)
class Token:
    kind: str  # num, id, op, end
    text: str
    col: int


def tokenize(text: str, line: int = 0) -> list[Token]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise CurveSyntaxError(f"unexpected character {text[col - 1]!r}", line, col)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(Token("num", m.group(1), col))
        elif m.group(2):
            out.append(Token("id", m.group(2), col))
        else:
            out.append(Token("op", m.group(3), col))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


class ExprParser:
    def __init__(self, tokens: list[Token], line: int = 0):
        self.toks = tokens
        self.i = 0
        self.line = line

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self, text: str | None = None) -> Token:
        tok = self.toks[self.i]
        if text is not None and tok.text != text:
            raise CurveSyntaxError(f"expected {text!r}, found {tok.text or 'end of line'!r}", self.line, tok.col)
        self.i += 1
        return tok

    def error(self, msg: str) -> CurveSyntaxError:
        return CurveSyntaxError(msg, self.line, self.peek().col)

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok.text in ("*", "/"):
                self.take()
                node = ("mul" if tok.text == "*" else "div", node, self.unary())
            elif tok.kind in ("id", "num") or tok.text == "(":
                node = ("mul", node, self.power())
            else:
                return node

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return ("neg", self.unary())
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            sign = 1
            if self.peek().text == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok.kind != "num":
                raise CurveSyntaxError("exponent must be an integer literal", self.line, tok.col)
            return ("pow", base, sign * int(tok.text))
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return ("num", int(tok.text))
        if tok.kind == "id":
            self.take()
            return ("var", tok.text, tok.col)
        if tok.text == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise self.error(f"unexpected {tok.text or 'end of line'!r}")


def parse_expression(text: str, line: int = 0):
    toks = tokenize(text, line)
    p = ExprParser(toks, line)
    node = p.expr()
    if p.peek().kind != "end":
        raise p.error(f"unexpected {p.peek().text!r}")
    return node


def identifiers(node) -> list[str]:
    """Identifiers in order of first appearance."""
    out: list[str] = []

    def walk(n):
        kind = n[0]
        if kind == "var":
            if n[1] not in out:
                out.append(n[1])
        elif kind == "num":
            pass
        elif kind in ("neg",):
            walk(n[1])
        elif kind == "pow":
            walk(n[1])
        else:
            walk(n[1])
            walk(n[2])

    walk(node)
    return out


def evaluate(node, leaf: Callable[[str], MPoly], const: Callable[[int], MPoly]) -> tuple[MPoly, MPoly]:
    """Evaluate an AST to a fraction (num, den) of polynomials."""
    kind = node[0]
    if kind == "num":
        return const(node[1]), const(1)
    if kind == "var":
        return leaf(node[1]), const(1)
    if kind == "neg":
        n, d = evaluate(node[1], leaf, const)
        return -n, d
    if kind == "pow":
        n, d = evaluate(node[1], leaf, const)
        e = node[2]
        if e < 0:
            if n.is_zero():
                raise ZeroDivisionError("zero raised to a negative power")
            n, d, e = d, n, -e
        return n**e, d**e
    a, b = evaluate(node[1], leaf, const), evaluate(node[2], leaf, const)
    if kind == "add":
        return a[0] * b[1] + b[0] * a[1], a[1] * b[1]
    if kind == "sub":
        return a[0] * b[1] - b[0] * a[1], a[1] * b[1]
    if kind == "mul":
        return a[0] * b[0], a[1] * b[1]
    if kind == "div":
        if b[0].is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        return a[0] * b[1], a[1] * b[0]
    raise ValueError(f"unknown node {kind}")
