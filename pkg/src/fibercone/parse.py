"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := coefficient | var ['^' nat] | '(' expr ')' ['^' nat]
    coefficient := integer ['/' integer]
"""
from __future__ import annotations

import re

from .errors import ParseError
from .poly import AmbientRing, Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num, m.start(1)))
        elif name is not None:
            out.append(("var", name, m.start(2)))
        else:
            out.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, ring: AmbientRing):
        self.text = text
        self.ring = ring
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def expr(self) -> Poly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def exponent(self) -> int:
        if self.peek()[:2] != ("op", "^"):
            return 1
        self.take()
        kind, val, _ = self.take()
        if kind != "num":
            self.error("malformed exponent (expected a natural number after '^')")
        return int(val)

    def factor(self) -> Poly:
        kind, val, _ = self.take()
        if kind == "num":
            if self.peek()[:2] == ("op", "/"):
                self.take()
                k2, den, _ = self.take()
                if k2 != "num":
                    self.error("malformed rational coefficient")
                c = self.ring.field.parse(f"{val}/{den}")
            else:
                c = self.ring.field.parse(val)
            return Poly(self.ring, {(0,) * self.ring.nvars: c})
        if kind == "var":
            if val not in self.ring.index:
                self.error(f"unknown variable {val!r} (ring variables: {', '.join(self.ring.names)})")
            return self.ring.var(val) ** self.exponent()
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.error("missing ')'")
            return inner ** self.exponent()
        self.error(f"unexpected token {val!r}" if val else "unexpected end of input")


def parse_poly(text: str, ring: AmbientRing) -> Poly:
    """Parse ``text`` into a canonical :class:`Poly` over ``ring``."""
    if not text.strip():
        raise ParseError("empty expression")
    p = _Parser(text, ring)
    out = p.expr()
    if p.peek()[0] != "eof":
        p.error(f"trailing input {p.peek()[1]!r}")
    return out


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]
