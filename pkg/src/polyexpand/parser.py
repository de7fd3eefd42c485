"""Recursive-descent parser for polynomial expressions in x and y.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT ('/' INT)? | 'x' | 'y' | '(' expr ')' | '-' atom

Multiplication is always explicit.  Unary minus is part of ``atom``, so it
binds tighter than ``^``: ``-x^2`` is ``(-x)^2``; write ``-1*x^2`` or
``0 - x^2`` for the negated square.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .bipoly import BiPoly
from .errors import PolyExpandError


class ParseError(PolyExpandError, ValueError):
    """Syntax error at a byte offset, with the set of tokens that would have fit."""

    def __init__(self, message: str, offset: int, expected: frozenset = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


# -- syntax tree -------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "PolyExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - *
    left: "PolyExpr"
    right: "PolyExpr"


@dataclass(frozen=True)
class Pow:
    base: "PolyExpr"
    exponent: int


PolyExpr = Union[Num, Var, Neg, BinOp, Pow]


def lower(e: PolyExpr) -> BiPoly:
    if isinstance(e, Num):
        return BiPoly.constant(e.value)
    if isinstance(e, Var):
        return BiPoly.x() if e.name == "x" else BiPoly.y()
    if isinstance(e, Neg):
        return -lower(e.arg)
    if isinstance(e, Pow):
        return lower(e.base) ** e.exponent
    a, b = lower(e.left), lower(e.right)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    return a * b


# -- lexer -------------------------------------------------------------------

_SINGLE = set("+-*^/()xy")


@dataclass(frozen=True)
class _Tok:
    kind: str  # INT, END, or the character itself
    text: str
    offset: int  # byte offset


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    byte = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            byte += len(ch.encode())
            i += 1
            continue
        if ch.isascii() and ch.isdigit():
            j = i
            while j < len(text) and text[j].isascii() and text[j].isdigit():
                j += 1
            toks.append(_Tok("INT", text[i:j], byte))
            byte += j - i
            i = j
            continue
        if ch in _SINGLE:
            toks.append(_Tok(ch, ch, byte))
            byte += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", byte, _ATOM_START | {"+", "-", "*", "^", ")"})
    toks.append(_Tok("END", "", byte))
    return toks


_ATOM_START = frozenset({"INT", "x", "y", "(", "-"})


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def take(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, expected, message=None):
        t = self.tok
        what = "end of input" if t.kind == "END" else repr(t.text)
        raise ParseError(message or f"unexpected {what}", t.offset, frozenset(expected))

    def parse(self) -> PolyExpr:
        e = self.expr()
        if self.tok.kind != "END":
            self.fail({"+", "-", "*", "^", "END"})
        return e

    def expr(self) -> PolyExpr:
        e = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.take().kind
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> PolyExpr:
        e = self.factor()
        while self.tok.kind == "*":
            self.take()
            e = BinOp("*", e, self.factor())
        return e

    def factor(self) -> PolyExpr:
        base = self.atom()
        if self.tok.kind != "^":
            return base
        self.take()
        if self.tok.kind != "INT":
            self.fail({"INT"}, "exponent must be a nonnegative integer literal")
        k = int(self.take().text)
        if self.tok.kind == "/":
            self.fail({"+", "-", "*", ")", "END"}, "exponent must be a nonnegative integer literal")
        return Pow(base, k)

    def atom(self) -> PolyExpr:
        t = self.tok
        if t.kind == "INT":
            self.take()
            value = Fraction(int(t.text))
            if self.tok.kind == "/":
                self.take()
                if self.tok.kind != "INT":
                    self.fail({"INT"})
                d = self.take()
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.offset)
                value /= int(d.text)
            return Num(value)
        if t.kind in ("x", "y"):
            self.take()
            return Var(t.kind)
        if t.kind == "(":
            self.take()
            e = self.expr()
            if self.tok.kind != ")":
                self.fail({")", "+", "-", "*", "^"})
            self.take()
            return e
        if t.kind == "-":
            self.take()
            return Neg(self.atom())
        self.fail(_ATOM_START)


def parse_poly(text: str) -> PolyExpr:
    return _Parser(text).parse()


def parse_bipoly(text: str) -> BiPoly:
    return lower(parse_poly(text))
