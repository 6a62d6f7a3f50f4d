"""Pure-Python sparse semi-echelon kernel (fallback and the QQ path).

Vectors are dicts ``column -> coefficient``.  Each stored row is normalized
so its lowest column (the pivot) has coefficient 1; pivots are distinct.
``p == 0`` means rational coefficients (any exact numeric type), otherwise
residues mod ``p``.
"""
from __future__ import annotations

from heapq import heapify, heappop, heappush


class Echelon:
    compiled = False

    def __init__(self, ncols: int, p: int = 0):
        self.ncols = ncols
        self.p = p
        self._cols: list[list[int]] = []
        self._vals: list[list] = []
        self._pivot: dict[int, int] = {}
        self._closed = 0

    @property
    def rank(self) -> int:
        return len(self._cols)

    def pivots(self) -> list[int]:
        return [c[0] for c in self._cols]

    def rows(self) -> list[dict]:
        return [dict(zip(c, v)) for c, v in zip(self._cols, self._vals)]

    def row(self, k: int) -> dict:
        return dict(zip(self._cols[k], self._vals[k]))

    def pivot_row(self, col: int) -> int:
        return self._pivot.get(col, -1)

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` with every pivot column cleared."""
        p = self.p
        acc = {c: v for c, v in vec.items() if v}
        if p:
            acc = {c: v % p for c, v in acc.items() if v % p}
        pivot = self._pivot
        if not pivot or not acc:
            return acc
        colsl, valsl = self._cols, self._vals
        heap = list(acc)
        heapify(heap)
        last = -1
        get = acc.get
        while heap:
            c = heappop(heap)
            if c == last:
                continue
            last = c
            v = get(c)
            if not v:
                continue
            r = pivot.get(c)
            if r is None:
                continue
            del acc[c]
            cols, vals = colsl[r], valsl[r]
            for k in range(1, len(cols)):
                cc = cols[k]
                old = get(cc)
                if old is None:
                    nv = -v * vals[k]
                    if p:
                        nv %= p
                    acc[cc] = nv
                    heappush(heap, cc)
                else:
                    nv = old - v * vals[k]
                    if p:
                        nv %= p
                    if nv:
                        acc[cc] = nv
                    else:
                        del acc[cc]
        return acc

    def _insert(self, acc: dict) -> int:
        cols = sorted(acc)
        lead = acc[cols[0]]
        if self.p:
            inv = pow(lead, -1, self.p)
            vals = [acc[c] * inv % self.p for c in cols]
        else:
            vals = [acc[c] / lead for c in cols]
        self._pivot[cols[0]] = len(self._cols)
        self._cols.append(cols)
        self._vals.append(vals)
        return cols[0]

    def add(self, vec: dict) -> bool:
        """Insert ``vec`` if it is independent of the current rows."""
        acc = self.reduce(vec)
        if not acc:
            return False
        self._insert(acc)
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def close(self, shifts) -> None:
        """Make the row span closed under each column map in ``shifts``.

        ``shifts[j][col]`` is the image column of ``col`` or -1 (dropped).
        Used for multiplication by a variable in a truncated polynomial ring.
        """
        k = self._closed
        while k < len(self._cols):
            cols, vals = self._cols[k], self._vals[k]
            for sh in shifts:
                vec = {}
                for c, v in zip(cols, vals):
                    nc = sh[c]
                    if nc >= 0:
                        vec[nc] = v
                if vec:
                    self.add(vec)
            k += 1
        self._closed = k

    def copy(self) -> "Echelon":
        e = Echelon(self.ncols, self.p)
        e._cols = list(self._cols)
        e._vals = list(self._vals)
        e._pivot = dict(self._pivot)
        e._closed = self._closed
        return e
