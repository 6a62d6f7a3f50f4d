# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse semi-echelon kernel over GF(p).

Same interface and row semantics as ``_echelon_py.Echelon`` for ``p > 0``.
Rows live in flat C buffers; reduction uses a dense accumulator.
"""
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset

ctypedef long long i64


cdef class Echelon:
    cdef public int ncols
    cdef public long long p
    cdef int nrows, rows_cap, closed
    cdef long long data_len, data_cap
    cdef int *cols
    cdef i64 *vals
    cdef long long *start
    cdef int *length
    cdef int *pivot
    cdef i64 *acc

    compiled = True

    def __cinit__(self, int ncols, long long p=0):
        if p <= 1 or p >= (1LL << 31):
            raise ValueError("compiled kernel needs a prime 1 < p < 2**31")
        self.ncols = ncols
        self.p = p
        self.nrows = 0
        self.closed = 0
        self.rows_cap = 64
        self.data_len = 0
        self.data_cap = 1024
        self.cols = <int *> malloc(self.data_cap * sizeof(int))
        self.vals = <i64 *> malloc(self.data_cap * sizeof(i64))
        self.start = <long long *> malloc(self.rows_cap * sizeof(long long))
        self.length = <int *> malloc(self.rows_cap * sizeof(int))
        self.pivot = <int *> malloc((ncols + 1) * sizeof(int))
        self.acc = <i64 *> malloc((ncols + 1) * sizeof(i64))
        if not (self.cols and self.vals and self.start and self.length and self.pivot and self.acc):
            raise MemoryError()
        cdef int c
        for c in range(ncols):
            self.pivot[c] = -1
        memset(self.acc, 0, (ncols + 1) * sizeof(i64))

    def __dealloc__(self):
        free(self.cols)
        free(self.vals)
        free(self.start)
        free(self.length)
        free(self.pivot)
        free(self.acc)

    @property
    def rank(self):
        return self.nrows

    def pivots(self):
        return [self.cols[self.start[k]] for k in range(self.nrows)]

    def row(self, int k):
        cdef long long s = self.start[k]
        return {self.cols[s + j]: self.vals[s + j] for j in range(self.length[k])}

    def rows(self):
        return [self.row(k) for k in range(self.nrows)]

    def pivot_row(self, int col):
        if col < 0 or col >= self.ncols:
            return -1
        return self.pivot[col]

    cdef int _load(self, dict vec, int *hi) except -2:
        cdef int lo = self.ncols
        cdef int c
        cdef i64 v
        hi[0] = -1
        for key, val in vec.items():
            c = key
            if c < 0 or c >= self.ncols:
                raise IndexError(f"column {c} out of range")
            v = val % self.p
            if v:
                self.acc[c] = v
                if c < lo:
                    lo = c
                if c > hi[0]:
                    hi[0] = c
        return lo

    cdef int _reduce_acc(self, int lo, int hi, int *hi_out):
        """Clear pivot columns of acc in [lo, ...]; return lowest surviving column or -1."""
        cdef int c, r, k, cc, first = -1
        cdef long long s
        cdef int ln
        cdef i64 v, x, p = self.p
        c = lo
        while c <= hi:
            v = self.acc[c]
            if v:
                r = self.pivot[c]
                if r >= 0:
                    s = self.start[r]
                    ln = self.length[r]
                    for k in range(1, ln):
                        cc = self.cols[s + k]
                        x = self.acc[cc] - (v * self.vals[s + k]) % p
                        if x < 0:
                            x += p
                        self.acc[cc] = x
                    cc = self.cols[s + ln - 1]
                    if cc > hi:
                        hi = cc
                    self.acc[c] = 0
                elif first < 0:
                    first = c
            c += 1
        hi_out[0] = hi
        return first

    cdef void _grow(self, long long need):
        while self.data_len + need > self.data_cap:
            self.data_cap *= 2
            self.cols = <int *> realloc(self.cols, self.data_cap * sizeof(int))
            self.vals = <i64 *> realloc(self.vals, self.data_cap * sizeof(i64))
        if self.nrows + 1 > self.rows_cap:
            self.rows_cap *= 2
            self.start = <long long *> realloc(self.start, self.rows_cap * sizeof(long long))
            self.length = <int *> realloc(self.length, self.rows_cap * sizeof(int))

    cdef void _insert_acc(self, int first, int hi):
        """Store acc[first..hi] as a new normalized row and clear acc."""
        cdef int c, n = 0
        cdef i64 inv, p = self.p
        for c in range(first, hi + 1):
            if self.acc[c]:
                n += 1
        self._grow(n)
        inv = pow(int(self.acc[first]), -1, int(p))
        cdef long long s = self.data_len
        cdef int j = 0
        for c in range(first, hi + 1):
            if self.acc[c]:
                self.cols[s + j] = c
                self.vals[s + j] = (self.acc[c] * inv) % p
                self.acc[c] = 0
                j += 1
        self.start[self.nrows] = s
        self.length[self.nrows] = n
        self.pivot[first] = self.nrows
        self.nrows += 1
        self.data_len += n

    cdef void _clear(self, int lo, int hi):
        cdef int c
        for c in range(lo, hi + 1):
            self.acc[c] = 0

    def reduce(self, dict vec):
        cdef int hi, lo, first, c
        lo = self._load(vec, &hi)
        if hi < 0:
            return {}
        first = self._reduce_acc(lo, hi, &hi)
        out = {}
        if first >= 0:
            for c in range(first, hi + 1):
                if self.acc[c]:
                    out[c] = self.acc[c]
                    self.acc[c] = 0
        return out

    def add(self, dict vec):
        cdef int hi, lo, first
        lo = self._load(vec, &hi)
        if hi < 0:
            return False
        first = self._reduce_acc(lo, hi, &hi)
        if first < 0:
            self._clear(lo, hi)
            return False
        self._insert_acc(first, hi)
        return True

    def contains(self, dict vec):
        return not self.reduce(vec)

    def close(self, shifts):
        cdef int nsh = len(shifts)
        cdef int j, k, c, nc, lo, hi, first, ln
        cdef long long s
        cdef int[:, :] sh
        import numpy as np
        arr = np.ascontiguousarray(np.asarray(shifts, dtype=np.int32))
        if nsh == 0:
            self.closed = self.nrows
            return
        sh = arr
        k = self.closed
        while k < self.nrows:
            for j in range(nsh):
                s = self.start[k]
                ln = self.length[k]
                lo = self.ncols
                hi = -1
                for c in range(ln):
                    nc = sh[j, self.cols[s + c]]
                    if nc >= 0:
                        self.acc[nc] = self.vals[s + c]
                        if nc < lo:
                            lo = nc
                        if nc > hi:
                            hi = nc
                if hi < 0:
                    continue
                first = self._reduce_acc(lo, hi, &hi)
                if first < 0:
                    self._clear(lo, hi)
                else:
                    self._insert_acc(first, hi)
            k += 1
        self.closed = k

    def copy(self):
        e = Echelon(self.ncols, self.p)
        for k in range(self.nrows):
            e._append_raw(self.row(k))
        e._set_closed(self.closed)
        return e

    def _append_raw(self, dict row):
        cdef int hi, lo
        lo = self._load(row, &hi)
        self._insert_acc(lo, hi)

    def _set_closed(self, int k):
        self.closed = k
