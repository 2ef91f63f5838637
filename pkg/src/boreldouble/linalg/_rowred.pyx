# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer row-echelon kernel (int64 fast path).

Mirrors ``_rowred_py.EchelonImpl`` step for step so both backends produce
identical echelon states.  Entries are kept in C int64; any row whose
elimination could overflow raises OverflowError, and the caller falls back to
the pure-Python implementation (which replays the same arithmetic exactly,
just without the 64-bit bound).
"""

from cpython cimport array
import array

cdef long long LIMIT = (<long long>1) << 62


cdef long long c_gcd(long long a, long long b) noexcept:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef class EchelonImpl:
    cdef public int ncols
    cdef list _pivcols
    cdef list _rows      # list of array('q')
    cdef list _maxabs    # per-row max |entry| as Python ints

    def __init__(self, ncols):
        self.ncols = ncols
        self._pivcols = []
        self._rows = []
        self._maxabs = []

    @classmethod
    def from_state(cls, ncols, pivcols, rows):
        cdef EchelonImpl self = cls(ncols)
        for pc, row in zip(pivcols, rows):
            arr = array.array('q', row)
            self._pivcols.append(pc)
            self._rows.append(arr)
            self._maxabs.append(max(abs(v) for v in row) if row else 0)
        return self

    @property
    def rank(self):
        return len(self._rows)

    def pivot_cols(self):
        return list(self._pivcols)

    def rows(self):
        return [list(r) for r in self._rows]

    def add_row(self, row) -> bool:
        cdef int n = self.ncols
        cdef array.array arr
        cdef long long[::1] r
        cdef long long[::1] p
        cdef long long a, lead, g, v, newmax
        cdef Py_ssize_t idx, j, pivot
        if len(row) != n:
            raise ValueError("row length %d != %d columns" % (len(row), n))
        # array('q') raises OverflowError itself if an entry exceeds int64
        arr = array.array('q', [int(x) for x in row])
        r = arr
        newmax = 0
        for j in range(n):
            v = r[j]
            if v < 0:
                v = -v
            if v > newmax:
                newmax = v
        rowmax = int(newmax)
        for idx in range(len(self._pivcols)):
            pc = self._pivcols[idx]
            a = r[pc]
            if a == 0:
                continue
            p = self._rows[idx]
            lead = p[pc]
            # conservative bound in unbounded Python ints
            if int(abs(lead)) * rowmax + int(abs(a)) * self._maxabs[idx] >= LIMIT:
                raise OverflowError("int64 elimination bound exceeded")
            g = 0
            for j in range(n):
                v = lead * r[j] - a * p[j]
                r[j] = v
                g = c_gcd(g, v)
            if g == 0:
                return False
            if g > 1:
                for j in range(n):
                    r[j] = r[j] // g
            newmax = 0
            for j in range(n):
                v = r[j]
                if v < 0:
                    v = -v
                if v > newmax:
                    newmax = v
            rowmax = int(newmax)
        pivot = -1
        for j in range(n):
            if r[j] != 0:
                pivot = j
                break
        if pivot < 0:
            return False
        if r[pivot] < 0:
            for j in range(n):
                r[j] = -r[j]
        self._pivcols.append(int(pivot))
        self._rows.append(arr)
        self._maxabs.append(rowmax)
        return True
