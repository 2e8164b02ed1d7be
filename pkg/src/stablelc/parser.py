"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := ('-')? factor ('*' factor)*
    factor := atom ('^' NAT)?
    atom   := INT ('/' NAT)? | IDENT | '(' expr ')'

The ``INT '/' NAT`` form only exists so rational coefficients written by
:meth:`Polynomial.to_str` read back unchanged.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .fields import Field
from .polynomial import PolyRing, Polynomial

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                break
            kind = ("int", "ident", "sym")[m.lastindex - 1]
            start = m.start(m.lastindex)
            self.tokens.append((kind, m.group(m.lastindex), self._byte(start)))
            pos = m.end()
        self.tokens.append(("end", "", self._byte(len(text))))
        self.i = 0

    def _byte(self, char_index: int) -> int:
        return len(self.text[:char_index].encode("utf-8"))

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_sym(self, sym: str):
        kind, val, off = self.take()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r}, found {val or 'end of input'!r}", off)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", off)
        return p

    def expr(self) -> Polynomial:
        acc = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Polynomial:
        negate = False
        kind, val, _ = self.peek()
        if kind == "sym" and val == "-":
            self.take()
            negate = True
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                break
        return -acc if negate else acc

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind, val, off = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", off)
            return base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val, off = self.take()
        if kind == "int":
            value = Fraction(int(val))
            k2, v2, _ = self.peek()
            if k2 == "sym" and v2 == "/":
                self.take()
                k3, v3, off3 = self.take()
                if k3 != "int" or int(v3) == 0:
                    raise ParseError("denominator must be a positive integer literal", off3)
                value = Fraction(int(val), int(v3))
            try:
                return self.ring.const(value)
            except ZeroDivisionError as exc:
                raise ParseError(str(exc), off) from None
        if kind == "ident":
            if val not in self.ring.names:
                raise ParseError(f"unknown identifier {val!r}", off)
            return self.ring.var(val)
        if kind == "sym" and val == "(":
            inner = self.expr()
            self.expect_sym(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", off)


def parse_poly(text: str, vars: Sequence[str], field: Field) -> Polynomial:
    """Parse ``text`` into a canonical polynomial in ``vars`` over ``field``."""
    ring = vars if isinstance(vars, PolyRing) else PolyRing(field, tuple(vars))
    return _Parser(text, ring).parse()
