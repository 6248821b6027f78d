"""Recursive-descent parser for group-ring expressions.

Grammar::

    expr      := term { ("+" | "-") term }
    term      := factor { "*" factor }
    factor    := atom [ "^" integer ]
    atom      := rational | generator | "(" expr ")"
    generator := "x" digits
    rational  := ["-"] digits ["/" digits]

Whitespace is ignored.  ``str`` of a :class:`GroupRingElem` produces text this
parser reads back to the same element.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError, PreconditionError
from .groupring import GroupRingElem, is_trivial_unit
from .words import Word


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-" or "*"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Gen, BinOp, Pow]


class _Parser:
    def __init__(self, text: str, rank: int):
        self.text = text
        self.rank = rank
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.take(ch):
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)

    def digits(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.peek() or "end of input"
            raise ParseError(f"expected digits, found {found!r}", start)
        return int(self.text[start:self.pos])

    def integer(self) -> int:
        sign = -1 if self.take("-") else 1
        return sign * self.digits()

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.take("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.take("^"):
            node = Pow(node, self.integer())
        return node

    def atom(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch == "x":
            start = self.pos
            self.pos += 1
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                raise ParseError("generator needs an index", start)
            i = self.digits()
            if not 1 <= i <= self.rank:
                raise ParseError(f"generator x{i} outside rank {self.rank}", start, kind="GeneratorOutOfRange")
            return Gen(i)
        if ch == "-" or ch.isdigit():
            neg = self.take("-")
            num = self.digits()
            den = 1
            if self.take("/"):
                den = self.digits()
                if den == 0:
                    raise ParseError("zero denominator", self.pos)
            return Num(Fraction(-num if neg else num, den))
        found = ch or "end of input"
        raise ParseError(f"unexpected {found!r}", self.pos)


def parse_expr(text: str, rank: int) -> Expr:
    if rank < 1:
        raise ValueError("rank must be positive")
    p = _Parser(text, rank)
    node = p.expr()
    if p.peek():
        raise ParseError(f"unexpected {p.peek()!r}", p.pos)
    return node


def evaluate(node: Expr, rank: int) -> GroupRingElem:
    if isinstance(node, Num):
        return GroupRingElem.scalar(rank, node.value)
    if isinstance(node, Gen):
        return GroupRingElem.from_word(Word(rank, (node.index,)))
    if isinstance(node, Pow):
        base = evaluate(node.base, rank)
        if node.exponent < 0:
            if base.is_zero():
                raise PreconditionError("zero has no inverse", kind="ZeroInverse")
            if is_trivial_unit(base) is None:
                raise PreconditionError(f"{base} is not a unit", kind="NotInvertible")
        return base ** node.exponent
    left, right = evaluate(node.left, rank), evaluate(node.right, rank)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def parse_elem(text: str, rank: int) -> GroupRingElem:
    return evaluate(parse_expr(text, rank), rank)


def parse_word(text: str, rank: int) -> Word:
    """A word given as an expression that evaluates to a coefficient-one monomial."""
    f = parse_elem(text, rank)
    unit = is_trivial_unit(f)
    if unit is None or unit[0] != 1:
        raise PreconditionError(f"{f} is not a group element", kind="NotAWord")
    return unit[1]


def to_text(f: GroupRingElem) -> str:
    return str(f)


__all__ = ["Expr", "Num", "Gen", "BinOp", "Pow", "parse_expr", "evaluate", "parse_elem", "parse_word", "to_text"]
