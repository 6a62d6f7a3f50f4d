"""Coefficient fields: the rationals and prime fields.

Scalars are plain values: ``gmpy2.mpq`` for QQ and ``int`` residues in
``[0, p)`` for GF(p).  A :class:`Field` canonicalizes and operates on them.
Hot loops read ``field.p`` (0 for QQ) and inline the arithmetic.
"""
from __future__ import annotations

import re

import gmpy2
from gmpy2 import mpq

from .errors import InputError, ParseError

DEFAULT_PRIME = 32003


class Field:
    """Base class; see :class:`Rationals` and :class:`PrimeField`."""

    p = 0
    name = "?"

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return self.name

    # generic arithmetic, overridden where the representation needs it
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return self.mul(a, self.inv(b))


class Rationals(Field):
    p = 0
    name = "QQ"
    zero = mpq(0)
    one = mpq(1)

    def __call__(self, value, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return mpq(value, den)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return mpq(1) / a

    def parse(self, text: str):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?", text)
        if not m:
            raise ParseError(f"bad rational literal {text!r}")
        den = int(m.group(2) or 1)
        if den == 0:
            raise ParseError("zero denominator")
        return mpq(int(m.group(1)), den)

    def to_str(self, a) -> str:
        return str(mpq(a))

    def numerator_denominator(self, a):
        a = mpq(a)
        return int(a.numerator), int(a.denominator)


class PrimeField(Field):
    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 2 or not gmpy2.is_prime(p):
            raise InputError(f"{p} is not a prime")
        self.p = int(p)
        self.name = f"GF({p})"

    def __call__(self, value, den=1):
        if den % self.p == 0:
            raise InputError(f"denominator {den} is not invertible mod {self.p}")
        return (int(value) * pow(int(den), -1, self.p)) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def parse(self, text: str):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?", text)
        if not m:
            raise ParseError(f"bad coefficient literal {text!r}")
        den = int(m.group(2) or 1)
        if den % self.p == 0:
            raise ParseError(f"coefficient {text.strip()} is not in {self.name}")
        return self(int(m.group(1)), den)

    def to_str(self, a) -> str:
        return str(int(a))


QQ = Rationals()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_spec(text: str) -> Field:
    """Parse ``Q``/``QQ`` or ``Fp <p>`` / ``GF(p)`` style descriptions."""
    t = text.strip()
    if t in ("Q", "QQ", "rational", "rationals"):
        return QQ
    m = re.fullmatch(r"(?:Fp|GF|F)\s*\(?\s*(\d+)\s*\)?", t)
    if m:
        return PrimeField(int(m.group(1)))
    if t in ("Fp", "GF"):
        return PrimeField(DEFAULT_PRIME)
    raise ParseError(f"unknown field {text!r}; use 'Q' or 'Fp <p>'")
