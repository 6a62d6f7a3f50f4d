"""Monomials, monomial orders, ambient rings and exact multivariate polynomials.

A monomial is a tuple of non-negative exponents over the ring's ordered
variable list.  :class:`Poly` is immutable; its terms are kept in a dict and
serialized in degrevlex-descending order regardless of any order used for
computation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InputError, RingMismatchError
from .field import QQ, Field

ROLES = ("base", "presentation", "elimination", "generic")
RESERVED = frozenset({"t"})


def mono_degree(e: Sequence[int]) -> int:
    return sum(e)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b) -> bool:
    """True iff monomial ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


# --- orders -----------------------------------------------------------------

def _lex_key(e):
    return tuple(e)


def _degrevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


_KIND_KEYS = {"lex": _lex_key, "degrevlex": _degrevlex_key}


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order.

    ``kind`` is ``"lex"``, ``"degrevlex"`` or ``"block"``.  For block orders
    ``blocks`` is a tuple of ``(variable indices, inner kind)``; earlier
    blocks dominate later ones and every variable must appear exactly once.
    """

    kind: str = "degrevlex"
    blocks: tuple = ()

    def __post_init__(self):
        if self.kind == "block":
            if not self.blocks:
                raise ValueError("block order needs blocks")
            for idx, inner in self.blocks:
                if inner not in _KIND_KEYS:
                    raise ValueError(f"unknown inner order {inner!r}")
            seen = [i for idx, _ in self.blocks for i in idx]
            if len(seen) != len(set(seen)) or sorted(seen) != list(range(len(seen))):
                raise ValueError("blocks must partition the variable indices")
        elif self.kind not in _KIND_KEYS:
            raise ValueError(f"unknown order {self.kind!r}")

    @classmethod
    def block(cls, first: Iterable[int], nvars: int, inner: str = "degrevlex"):
        """Two-block elimination order: ``first`` variables >> the rest."""
        first = tuple(sorted(set(first)))
        rest = tuple(i for i in range(nvars) if i not in first)
        blocks = tuple((b, inner) for b in (first, rest) if b)
        return cls("block", blocks)

    @cached_property
    def key(self):
        """Function mapping an exponent tuple to a flat tuple; larger key = greater monomial."""
        if self.kind != "block":
            return _KIND_KEYS[self.kind]
        parts = [(idx, _KIND_KEYS[inner]) for idx, inner in self.blocks]

        def key(e):
            out = ()
            for idx, fn in parts:
                out += fn([e[i] for i in idx])
            return out

        return key

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        if self.kind != "block":
            return self.kind
        return "block(" + "; ".join(f"{list(i)}:{k}" for i, k in self.blocks) + ")"


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def order_compare(a, b, order: MonomialOrder = DEGREVLEX) -> str:
    if len(a) != len(b):
        raise ValueError("monomials of different lengths")
    return ("less", "equal", "greater")[order.compare(a, b) + 1]


# --- rings ------------------------------------------------------------------

@dataclass(frozen=True)
class AmbientRing:
    names: tuple
    field: Field = QQ
    role: str = "generic"

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise InputError(f"duplicate variable names in {self.names}")
        if self.role not in ROLES:
            raise ValueError(f"unknown ring role {self.role!r}")
        if self.role == "base" and RESERVED & set(self.names):
            raise InputError("variable name 't' is reserved")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict:
        return {n: i for i, n in enumerate(self.names)}

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(exps): c} if c else {})

    def parse(self, text: str) -> "Poly":
        from .parse import parse_poly
        return parse_poly(text, self)

    def __str__(self):
        return f"{self.field}[{', '.join(self.names)}]"


def base_ring(names, field=QQ) -> AmbientRing:
    return AmbientRing(tuple(names), field, "base")


def presentation_ring(n: int, field=QQ) -> AmbientRing:
    return AmbientRing(tuple(f"X{i}" for i in range(1, n + 1)), field, "presentation")


# --- polynomials ------------------------------------------------------------

class Poly:
    """Immutable polynomial: ``ring`` plus a mapping exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring: AmbientRing, terms: Mapping, _clean: bool = True):
        self.ring = ring
        if _clean:
            field = ring.field
            p = field.p
            if p:
                terms = {e: c % p for e, c in terms.items()}
            else:
                terms = {e: field(c) for e, c in terms.items()}
            terms = {e: c for e, c in terms.items() if c}
        self.terms = terms
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        return cls(ring, terms, _clean=False)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self, order: MonomialOrder | None = None):
        """Terms as ``(exp, coeff)`` pairs, descending in ``order`` (default degrevlex)."""
        if order is None or order == DEGREVLEX:
            if self._sorted is None:
                self._sorted = sorted(self.terms.items(), key=lambda t: _degrevlex_key(t[0]),
                                      reverse=True)
            return self._sorted
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key
        return max(self.terms.items(), key=lambda t: key(t[0]))

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX):
        return self.leading_term(order)[0]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def variables_used(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- arithmetic
    def _check(self, other):
        if not isinstance(other, Poly):
            return self.ring.const(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"mixed rings {self.ring} and {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.field.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Poly._raw(self.ring, {e: ((-c) % p if p else -c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scalar_mul(self, c):
        c = self.ring.field(c)
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scalar_mul(other)
        other = self._check(other)
        p = self.ring.field.p
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items()}
        return Poly._raw(self.ring, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("power with negative or non-integer exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps, coeff=None):
        terms = {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        p = Poly._raw(self.ring, terms)
        return p if coeff is None else p.scalar_mul(coeff)

    def monic(self, order: MonomialOrder = DEGREVLEX):
        if not self.terms:
            return self
        lc = self.leading_term(order)[1]
        return self.scalar_mul(self.ring.field.inv(lc))

    # -- conversions
    def set_zero(self, indices: Iterable[int]) -> "Poly":
        """Substitute 0 for the given variables (ring unchanged)."""
        idx = list(indices)
        return Poly._raw(self.ring, {e: c for e, c in self.terms.items()
                                     if all(e[i] == 0 for i in idx)})

    def to_ring(self, ring: AmbientRing, mapping: Sequence[int] | None = None) -> "Poly":
        """Re-express in ``ring``: variable ``i`` of self becomes variable ``mapping[i]``.

        Without ``mapping`` variables are matched by name; a variable of self
        missing from ``ring`` must not occur.
        """
        if mapping is None:
            mapping = [ring.index.get(n, -1) for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    j = mapping[i]
                    if j < 0:
                        raise InputError(f"variable {self.ring.names[i]} not in {ring}")
                    ne[j] += x
            out[tuple(ne)] = c
        return Poly(ring, out)

    # -- equality / printing
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if not self.terms:
            return other == 0
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return f"Poly({to_string(self)!r})"


def _mono_str(e, names) -> str:
    parts = []
    for n, x in zip(names, e):
        if x == 1:
            parts.append(n)
        elif x:
            parts.append(f"{n}^{x}")
    return "*".join(parts)


def to_string(f: Poly) -> str:
    """Canonical text form (degrevlex-descending terms); re-parses to ``f``."""
    if not f.terms:
        return "0"
    field = f.ring.field
    out = []
    for k, (e, c) in enumerate(f.sorted_terms()):
        neg = False
        if field.p == 0 and c < 0:
            neg, c = True, -c
        cs = field.to_str(c)
        ms = _mono_str(e, f.ring.names)
        if not ms:
            body = cs
        elif cs == "1":
            body = ms
        else:
            body = f"{cs}*{ms}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
