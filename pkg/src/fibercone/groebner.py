"""Reduced Groebner bases and the ideal operations built on them.

Polynomials are handled internally as ``dict`` exponent -> coefficient.
Buchberger's algorithm uses the normal selection strategy (least lcm
degree, ties by the order) and the Gebauer-Moeller update, which applies the
coprime and chain criteria.
"""
from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from itertools import combinations
from operator import itemgetter

from .errors import RingMismatchError, ResourceCapError
from .poly import DEGREVLEX, AmbientRing, MonomialOrder, Poly

DEFAULT_MAX_BASIS = 20000
DEFAULT_MAX_DEGREE = 400


def _neg_key_fn(order: MonomialOrder, nvars: int):
    """Key whose ascending order is the *descending* monomial order (for heaps)."""

    def part(kind, idx):
        contiguous = list(idx) == list(range(idx[0], idx[0] + len(idx))) if idx else True
        if kind == "degrevlex":
            if contiguous:
                a, b = (idx[0], idx[0] + len(idx)) if idx else (0, 0)
                return lambda e: (-sum(e[a:b]),) + e[a:b][::-1]
            get = itemgetter(*idx)
            return lambda e: (lambda s: (-sum(s),) + s[::-1])(tuple(get(e)) if len(idx) > 1 else (get(e),))
        if contiguous:
            a, b = (idx[0], idx[0] + len(idx)) if idx else (0, 0)
            return lambda e: tuple(-x for x in e[a:b])
        return lambda e: tuple(-e[i] for i in idx)

    if order.kind == "degrevlex":
        return lambda e: (-sum(e),) + e[::-1]
    if order.kind == "lex":
        return lambda e: tuple(-x for x in e)
    fns = [part(kind, tuple(idx)) for idx, kind in order.blocks]
    if len(fns) == 2:
        f0, f1 = fns
        return lambda e: f0(e) + f1(e)
    return lambda e: sum((f(e) for f in fns), ())


def _mask(e) -> int:
    m = 0
    for k, x in enumerate(e):
        if x:
            m |= 1 << k
    return m


class _Reducer:
    """Active basis used for normal forms: monic polys with cached lead data."""

    def __init__(self, nvars, p, neg_key):
        self.nvars = nvars
        self.p = p
        self.neg_key = neg_key
        self.leads: list = []  # (lead exp, mask)
        self.tails: list = []  # list of (exp, coeff) excluding the lead
        self.active: list = []

    def add(self, lead, terms: dict) -> int:
        self.leads.append((lead, _mask(lead)))
        self.tails.append([(e, c) for e, c in terms.items() if e != lead])
        self.active.append(True)
        return len(self.leads) - 1

    def find(self, e, emask):
        leads = self.leads
        for idx, act in enumerate(self.active):
            if not act:
                continue
            lm, m = leads[idx]
            if m & ~emask:
                continue
            for a, b in zip(lm, e):
                if a > b:
                    break
            else:
                return idx
        return -1

    def normal_form(self, terms: dict, full: bool = True) -> dict:
        p = self.p
        nk = self.neg_key
        acc = dict(terms)
        heap = [(nk(e), e) for e in acc]
        heapify(heap)
        rem = {}
        get = acc.get
        while heap:
            _, e = heappop(heap)
            c = acc.pop(e, None)
            if not c:
                continue
            r = self.find(e, _mask(e))
            if r < 0:
                rem[e] = c
                if not full:
                    # lead term irreducible: keep everything else as is
                    for k, v in acc.items():
                        if v:
                            rem[k] = v
                    return rem
                continue
            lead = self.leads[r][0]
            q = tuple(a - b for a, b in zip(e, lead))
            for te, tc in self.tails[r]:
                ne = tuple(a + b for a, b in zip(te, q))
                old = get(ne)
                if old is None:
                    v = -c * tc
                    if p:
                        v %= p
                    acc[ne] = v
                    heappush(heap, (nk(ne), ne))
                else:
                    v = old - c * tc
                    if p:
                        v %= p
                    acc[ne] = v
        return rem


def _lead(terms: dict, neg_key):
    return min(terms, key=neg_key)


def _monic(terms: dict, lead, p):
    c = terms[lead]
    if p:
        inv = pow(c, -1, p)
        return {e: v * inv % p for e, v in terms.items()}
    return {e: v / c for e, v in terms.items()}


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, sorted by increasing leading monomial."""

    ring: AmbientRing
    order: MonomialOrder
    polys: tuple

    @property
    def leading_monomials(self) -> list:
        return [f.leading_monomial(self.order) for f in self.polys]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def reducer(self) -> _Reducer:
        red = _Reducer(self.ring.nvars, self.ring.field.p, _neg_key_fn(self.order, self.ring.nvars))
        for f in self.polys:
            red.add(f.leading_monomial(self.order), f.terms)
        return red

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].total_degree() == 0


def buchberger(gens, order: MonomialOrder = DEGREVLEX, ring: AmbientRing | None = None,
               max_basis: int = DEFAULT_MAX_BASIS, max_degree: int = DEFAULT_MAX_DEGREE) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens]
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"generator {g} is not in {ring}")
    p = ring.field.p
    nk = _neg_key_fn(order, ring.nvars)
    red = _Reducer(ring.nvars, p, nk)
    polys: list[dict] = []
    pairs: list = []  # heap of (deg lcm, neg key... ) entries
    pair_set: set = set()

    def lcm(a, b):
        return tuple(x if x > y else y for x, y in zip(a, b))

    def divides(a, b):
        for x, y in zip(a, b):
            if x > y:
                return False
        return True

    def push_pair(i, j):
        L = lcm(red.leads[i][0], red.leads[j][0])
        # normal strategy: least lcm degree, then the smallest lcm in the order
        key = (sum(L), tuple(-x for x in nk(L)), i, j)
        heappush(pairs, (key, i, j, L))
        pair_set.add((i, j))

    def update(h):
        """Gebauer-Moeller: add pairs for new element h and prune old ones."""
        lh = red.leads[h][0]
        act = [g for g in range(h) if red.active[g]]
        cands = [(g, lcm(red.leads[g][0], lh)) for g in act]
        keep = []
        for k, (g, L) in enumerate(cands):
            coprime = all(not (a and b) for a, b in zip(red.leads[g][0], lh))
            if coprime:
                keep.append((g, L, True))
                continue
            dominated = False
            for k2, (g2, L2) in enumerate(cands):
                if k2 == k:
                    continue
                if divides(L2, L) and (L2 != L or k2 < k):
                    dominated = True
                    break
            if not dominated:
                keep.append((g, L, False))
        # refine: drop pairs whose lcm is a multiple of a coprime survivor's lcm
        new_pairs = [(g, L) for g, L, cp in keep if not cp]
        # chain criterion on existing pairs
        live = []
        for key, i, j, L in pairs:
            if (i, j) not in pair_set:
                continue
            if divides(lh, L) and lcm(red.leads[i][0], lh) != L and lcm(red.leads[j][0], lh) != L:
                pair_set.discard((i, j))
                continue
            live.append((key, i, j, L))
        pairs[:] = live
        heapify(pairs)
        for g, L in new_pairs:
            push_pair(g, h)
        for g in act:
            if divides(lh, red.leads[g][0]):
                red.active[g] = False

    def insert(terms):
        lead = _lead(terms, nk)
        terms = _monic(terms, lead, p)
        polys.append(terms)
        h = red.add(lead, terms)
        if sum(lead) > max_degree:
            raise ResourceCapError(f"Groebner basis degree exceeds cap {max_degree}")
        if len(polys) > max_basis:
            raise ResourceCapError(f"Groebner basis size exceeds cap {max_basis}")
        update(h)
        return h

    for g in sorted(gens, key=lambda f: sorted(nk(e) for e in f.terms) if f.terms else []):
        if not g.terms:
            continue
        nf = red.normal_form(g.terms)
        if nf:
            insert(nf)
    while pairs:
        _, i, j, L = heappop(pairs)
        if (i, j) not in pair_set:
            continue
        pair_set.discard((i, j))
        fi, fj = polys[i], polys[j]
        li, lj = red.leads[i][0], red.leads[j][0]
        qi = tuple(a - b for a, b in zip(L, li))
        qj = tuple(a - b for a, b in zip(L, lj))
        s = {}
        for e, c in fi.items():
            if e != li:
                s[tuple(a + b for a, b in zip(e, qi))] = c
        for e, c in fj.items():
            if e != lj:
                ne = tuple(a + b for a, b in zip(e, qj))
                v = s.get(ne, 0) - c
                if p:
                    v %= p
                s[ne] = v
        s = {e: c for e, c in s.items() if c}
        if not s:
            continue
        nf = red.normal_form(s)
        if nf:
            insert(nf)
    return _reduce_basis(ring, order, [polys[k] for k in range(len(polys)) if red.active[k]], nk)


def _reduce_basis(ring, order, basis: list, nk) -> GroebnerBasis:
    p = ring.field.p
    leads = [_lead(f, nk) for f in basis]
    # minimal basis: drop elements whose lead is divisible by another's
    keep = []
    for k, lk in enumerate(leads):
        if any(j != k and all(a <= b for a, b in zip(leads[j], lk)) and (leads[j] != lk or j < k)
               for j in range(len(basis))):
            continue
        keep.append(k)
    out = []
    for k in keep:
        red = _Reducer(ring.nvars, p, nk)
        for j in keep:
            if j != k:
                red.add(leads[j], basis[j])
        lead = leads[k]
        tail = {e: c for e, c in basis[k].items() if e != lead}
        reduced = red.normal_form(tail)
        reduced[lead] = basis[k][lead]
        out.append((nk(lead), Poly(ring, _monic(reduced, lead, p))))
    out.sort(key=lambda t: t[0], reverse=True)
    return GroebnerBasis(ring, order, tuple(f for _, f in out))


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    if f.ring != gb.ring:
        raise RingMismatchError("normal form across rings")
    if not f.terms:
        return f
    return Poly(f.ring, gb.reducer().normal_form(f.terms))


def _standard_by_degree(leads, nvars, maxdeg=None):
    """Yield lists of standard monomials degree by degree (downward closed set)."""
    masks = [(lm, _mask(lm)) for lm in leads]

    def standard(e):
        em = _mask(e)
        for lm, m in masks:
            if m & ~em:
                continue
            if all(a <= b for a, b in zip(lm, e)):
                return False
        return True

    cur = [tuple([0] * nvars)] if standard(tuple([0] * nvars)) else []
    d = 0
    while cur:
        yield cur
        d += 1
        if maxdeg is not None and d > maxdeg:
            return
        nxt = set()
        for e in cur:
            for k in range(nvars):
                f = list(e)
                f[k] += 1
                f = tuple(f)
                if f not in nxt and standard(f):
                    nxt.add(f)
        cur = sorted(nxt, reverse=True)


class Ideal:
    """An ideal given by generators, with lazily cached Groebner bases per order."""

    def __init__(self, gens, ring: AmbientRing | None = None):
        gens = [g for g in gens if not g.is_zero()] if gens else []
        if ring is None:
            if not gens:
                raise ValueError("need a ring for the zero ideal")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"{g} not in {ring}")
        self.ring = ring
        self.gens = tuple(gens)
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def gb(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        g = self._gb.get(order)
        if g is None:
            g = self._gb[order] = buchberger(self.gens, order, self.ring)
        return g

    def is_zero(self) -> bool:
        return not self.gens

    def normal_form(self, f: Poly, order: MonomialOrder = DEGREVLEX) -> Poly:
        return normal_form(f, self.gb(order))

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        red = self.gb().reducer()
        return all(not red.normal_form(g.terms) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        if other.ring != self.ring:
            raise RingMismatchError("comparing ideals in different rings")
        return self.gb().polys == other.gb().polys

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.equals(other)

    __hash__ = None

    def plus(self, other) -> "Ideal":
        extra = other.gens if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.gens + tuple(extra), self.ring)

    def leading_monomials(self, order: MonomialOrder = DEGREVLEX) -> list:
        return self.gb(order).leading_monomials

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.gb().polys)

    # -- counting
    def colength(self) -> int:
        """dim_K of the quotient; requires a pure power of every variable among lead terms."""
        leads = self.leading_monomials()
        n = self.ring.nvars
        for k in range(n):
            if not any(lm[k] > 0 and sum(lm) == lm[k] for lm in leads):
                if not any(sum(lm) == 0 for lm in leads):
                    raise ValueError(f"not Artinian: no pure power of {self.ring.names[k]} among leading terms")
        return sum(len(layer) for layer in _standard_by_degree(leads, n))

    def standard_monomials(self) -> list:
        self.colength()
        return [e for layer in _standard_by_degree(self.leading_monomials(), self.ring.nvars) for e in layer]

    def hilbert_function(self, max_degree: int) -> list[int]:
        """dim_K of graded pieces 0..max_degree of the quotient (homogeneous ideals)."""
        out = [len(layer) for layer in _standard_by_degree(self.leading_monomials(), self.ring.nvars,
                                                           max_degree)]
        return (out + [0] * (max_degree + 1))[:max_degree + 1]

    def dimension(self) -> int:
        """Krull dimension via maximal independent variable sets of the lead ideal."""
        leads = self.leading_monomials()
        if any(sum(lm) == 0 for lm in leads):
            return -1
        n = self.ring.nvars
        supports = [_mask(lm) for lm in leads]
        for size in range(n, -1, -1):
            for S in combinations(range(n), size):
                sm = sum(1 << k for k in S)
                if all(s & ~sm for s in supports):
                    return size
        return 0

    # -- constructions
    def eliminate(self, drop) -> "Ideal":
        """Intersection with the subring on the retained variables (returned in that subring)."""
        drop = sorted(set(drop))
        n = self.ring.nvars
        keep = [k for k in range(n) if k not in drop]
        sub = AmbientRing(tuple(self.ring.names[k] for k in keep), self.ring.field, "generic")
        if not drop:
            return Ideal(self.gens, self.ring)
        order = MonomialOrder.block(drop, n)
        gb = self.gb(order)
        mapping = [-1] * n
        for j, k in enumerate(keep):
            mapping[k] = j
        free = [f for f in gb.polys if not any(e[k] for e in f.terms for k in drop)]
        return Ideal([f.to_ring(sub, mapping) for f in free], sub)

    def _extended(self, extra_name: str):
        names = (extra_name,) + self.ring.names
        big = AmbientRing(names, self.ring.field, "generic")
        emb = list(range(1, len(names)))
        return big, emb

    def intersect(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError("intersection across rings")
        if self.is_zero() or other.is_zero():
            return Ideal([], self.ring)
        big, emb = self._extended("_s")
        s = big.var(0)
        one = big.one()
        gens = [s * f.to_ring(big, emb) for f in self.gens]
        gens += [(one - s) * g.to_ring(big, emb) for g in other.gens]
        elim = Ideal(gens, big).eliminate([0])
        return Ideal([f.to_ring(self.ring, list(range(self.ring.nvars))) for f in elim.gens], self.ring)

    def colon(self, other) -> "Ideal":
        """(self : other) where ``other`` is a polynomial or an ideal."""
        if isinstance(other, Poly):
            return self._colon_poly(other)
        gens = other.gens if isinstance(other, Ideal) else tuple(other)
        if not gens:
            return Ideal([self.ring.one()], self.ring)
        out = self._colon_poly(gens[0])
        for f in gens[1:]:
            out = out.intersect(self._colon_poly(f))
        return out

    def _colon_poly(self, f: Poly) -> "Ideal":
        if f.is_zero():
            return Ideal([self.ring.one()], self.ring)
        inter = self.intersect(Ideal([f], self.ring))
        return Ideal([divide_exact(g, f) for g in inter.gb().polys], self.ring)


def divide_exact(a: Poly, f: Poly) -> Poly:
    """Quotient ``a / f``; raises ValueError when ``f`` does not divide ``a``."""
    order = DEGREVLEX
    nk = _neg_key_fn(order, a.ring.nvars)
    lead = _lead(f.terms, nk)
    lc = f.terms[lead]
    p = a.ring.field.p
    rem = dict(a.terms)
    quot = {}
    while rem:
        e = _lead(rem, nk)
        if not all(x >= y for x, y in zip(e, lead)):
            raise ValueError(f"{f} does not divide {a}")
        q = tuple(x - y for x, y in zip(e, lead))
        c = rem[e] * pow(lc, -1, p) % p if p else rem[e] / lc
        quot[q] = c
        for te, tc in f.terms.items():
            ne = tuple(x + y for x, y in zip(te, q))
            v = rem.get(ne, 0) - c * tc
            if p:
                v %= p
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return Poly(a.ring, quot)


def artinian_colength(ideal: Ideal) -> int:
    return ideal.colength()


def quotient_dimension(ideal: Ideal) -> int:
    return ideal.dimension()


def hilbert_function(ideal: Ideal, max_degree: int) -> list[int]:
    return ideal.hilbert_function(max_degree)


def ideal_membership(f: Poly, ideal: Ideal) -> bool:
    return ideal.contains(f)


def ideal_contains(a: Ideal, b: Ideal) -> bool:
    return a.contains_ideal(b)


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    return a.equals(b)


def ideal_colon(J: Ideal, F) -> Ideal:
    return J.colon(F)


def eliminate(ideal: Ideal, drop) -> Ideal:
    return ideal.eliminate(drop)
