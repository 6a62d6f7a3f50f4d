"""Exact linear algebra on truncated polynomial rings K[x]/(x)^D.

Coordinates are the monomials of degree < D, ordered by ascending degree and
descending lex within a degree.  The order is multiplicative, so the lowest
term of ``m * f`` is ``m * lowest(f)`` and multiplication by a variable is a
monotone column map.

The echelon kernel is compiled (Cython, GF(p) only) when available, else the
pure-Python implementation is used.  Set ``FIBERCONE_PURE=1`` to force the
fallback.
"""
from __future__ import annotations

import os
from functools import cached_property
from itertools import combinations_with_replacement

import numpy as np

from . import _echelon_py
from .field import Field
from .poly import Poly

try:
    if os.environ.get("FIBERCONE_PURE") == "1":
        raise ImportError("pure backend forced")
    from . import _echelon_c
    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build
    _echelon_c = None
    HAVE_COMPILED = False


def new_echelon(ncols: int, field: Field, backend: str | None = None):
    """Return an empty echelon kernel for ``field``.

    ``backend`` is ``"compiled"``, ``"python"`` or None (best available).
    """
    p = field.p
    if backend == "compiled":
        if not HAVE_COMPILED or not p:
            raise RuntimeError("compiled kernel unavailable for this field")
        return _echelon_c.Echelon(ncols, p)
    if backend in (None, "auto") and HAVE_COMPILED and 1 < p < 2**31:
        return _echelon_c.Echelon(ncols, p)
    return _echelon_py.Echelon(ncols, p)


def exponents_of_degree(nvars: int, d: int):
    """Exponent tuples of total degree ``d`` in descending lex order."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in exponents_of_degree(nvars - 1, d - a):
            yield (a,) + rest


class MonomialBasis:
    """Monomials of degree < ``D`` in ``nvars`` variables, in column order."""

    def __init__(self, nvars: int, D: int):
        self.nvars = nvars
        self.D = D
        self.monomials = [e for d in range(D) for e in exponents_of_degree(nvars, d)]
        self.index = {e: i for i, e in enumerate(self.monomials)}
        self.degree_start = [0]
        for d in range(D):
            self.degree_start.append(self.degree_start[-1] + _count(nvars, d))

    def __len__(self):
        return len(self.monomials)

    @cached_property
    def shifts(self) -> np.ndarray:
        """``shifts[k][col]`` = column of ``monomial * x_k``, or -1 when degree reaches D."""
        out = np.full((self.nvars, len(self.monomials)), -1, dtype=np.int32)
        idx = self.index
        for col, e in enumerate(self.monomials):
            for k in range(self.nvars):
                f = list(e)
                f[k] += 1
                out[k, col] = idx.get(tuple(f), -1)
        return out

    def truncate(self, f: Poly) -> dict:
        idx = self.index
        return {idx[e]: c for e, c in f.terms.items() if e in idx}

    def to_poly(self, vec: dict, ring) -> Poly:
        return Poly(ring, {self.monomials[c]: v for c, v in vec.items()})

    def degree_of(self, col: int) -> int:
        return sum(self.monomials[col])


def _count(nvars, d):
    from math import comb
    return comb(d + nvars - 1, nvars - 1) if nvars else int(d == 0)


def truncated_product(f: dict, g: dict, D: int) -> dict:
    """Product of exponent->coeff dicts keeping only terms of degree < D."""
    out: dict = {}
    get = out.get
    gs = [(e, sum(e), c) for e, c in g.items()]
    for e1, c1 in f.items():
        d1 = sum(e1)
        for e2, d2, c2 in gs:
            if d1 + d2 < D:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
    return out


class SubspaceBasis:
    """A K-subspace of K[x]/(x)^D held as a semi-echelon kernel.

    Rows are normalized with pivot = lowest column; :meth:`rref`
    produces the reduced row echelon form on demand.
    """

    def __init__(self, basis: MonomialBasis, field: Field, backend: str | None = None):
        self.basis = basis
        self.field = field
        self.kernel = new_echelon(len(basis), field, backend)

    @property
    def dim(self) -> int:
        return self.kernel.rank

    def add(self, vec: dict) -> bool:
        return self.kernel.add(vec)

    def add_poly(self, f: Poly) -> bool:
        return self.kernel.add(self.basis.truncate(f))

    def close_under_variables(self) -> None:
        self.kernel.close(self.basis.shifts)

    def reduce(self, vec: dict) -> dict:
        return self.kernel.reduce(vec)

    def contains(self, vec: dict) -> bool:
        return not self.kernel.reduce(vec)

    def contains_poly(self, f: Poly) -> bool:
        return self.contains(self.basis.truncate(f))

    def rref(self) -> list[tuple[int, dict]]:
        """(pivot, row) pairs in reduced row echelon form, pivots increasing."""
        rows = sorted(self.kernel.rows(), key=min)
        p = self.field.p
        out: list[tuple[int, dict]] = []
        by_pivot: dict[int, dict] = {}
        for row in reversed(rows):
            piv = min(row)
            row = dict(row)
            for c in sorted(c for c in row if c != piv and c in by_pivot):
                v = row.get(c)
                if not v:
                    continue
                for cc, vv in by_pivot[c].items():
                    nv = row.get(cc, 0) - v * vv
                    if p:
                        nv %= p
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            by_pivot[piv] = row
            out.append((piv, row))
        out.reverse()
        return out

    def coordinates(self, vec: dict):
        """Unique coefficients of ``vec`` on the RREF rows, or None if not a member."""
        if not self.contains(vec):
            return None
        return [vec.get(piv, 0) for piv, _ in self.rref()]


def ideal_span(polys, basis: MonomialBasis, field: Field, times_maximal: bool = False,
               backend: str | None = None) -> SubspaceBasis:
    """Image of the ideal generated by ``polys`` (times (x) if requested) in K[x]/(x)^D."""
    sub = SubspaceBasis(basis, field, backend)
    shifts = basis.shifts
    for f in polys:
        vec = basis.truncate(f) if isinstance(f, Poly) else f
        if not vec:
            continue
        if times_maximal:
            for sh in shifts:
                moved = {int(sh[c]): v for c, v in vec.items() if sh[c] >= 0}
                if moved:
                    sub.add(moved)
        else:
            sub.add(vec)
    sub.close_under_variables()
    return sub


class TrackedSpan:
    """Small dense-free echelon that remembers how each row was built.

    Vectors are labeled on insertion; :meth:`express` writes a vector as a
    combination of the labels of the *independent* insertions (greedy
    pivots in insertion order), which yields the pivot solution.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, tuple[dict, dict]] = {}  # pivot col -> (row, combo)
        self.labels: list = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict):
        p = self.field.p
        acc = {c: v for c, v in vec.items() if v}
        combo: dict = {}
        while True:
            hits = [c for c in acc if c in self.rows]
            if not hits:
                return acc, combo
            c = min(hits)
            v = acc[c]
            row, rcombo = self.rows[c]
            for cc, vv in row.items():
                nv = acc.get(cc, 0) - v * vv
                if p:
                    nv %= p
                if nv:
                    acc[cc] = nv
                else:
                    acc.pop(cc, None)
            for lab, w in rcombo.items():
                nv = combo.get(lab, 0) + v * w
                if p:
                    nv %= p
                if nv:
                    combo[lab] = nv
                else:
                    combo.pop(lab, None)

    def add(self, vec: dict, label) -> bool:
        acc, combo = self._reduce(vec)
        if not acc:
            return False
        p = self.field.p
        piv = min(acc)
        inv = self.field.inv(acc[piv])
        # row = (vec - sum combo*labels) * inv
        lab_combo = {label: inv}
        for lab, w in combo.items():
            nv = -w * inv
            if p:
                nv %= p
            lab_combo[lab] = nv
        row = {c: (v * inv % p if p else v * inv) for c, v in acc.items()}
        self.rows[piv] = (row, lab_combo)
        self.labels.append(label)
        return True

    def contains(self, vec: dict) -> bool:
        return not self._reduce(vec)[0]

    def express(self, vec: dict):
        """Coefficients ``{label: c}`` with ``vec = sum c * labeled vector``, or None."""
        acc, combo = self._reduce(vec)
        if acc:
            return None
        return combo


def multisets(n: int, k: int):
    """Sorted index multisets of size ``k`` over ``0..n-1``, lexicographic."""
    return list(combinations_with_replacement(range(n), k))
