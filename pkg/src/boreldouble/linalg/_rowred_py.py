"""Pure-Python integer row-echelon kernel.

This is the reference implementation of the elimination core; the compiled
twin in ``_rowred.pyx`` follows the exact same algorithm (fraction-free
cross-multiplication with a gcd normalization after every elimination step),
so both backends produce identical echelon states.
"""

from __future__ import annotations

from math import gcd


class EchelonImpl:
    """Incremental integer row echelon.

    Rows are kept in insertion order.  Each stored row is primitive (gcd 1),
    has a positive leading entry, and is zero at the pivot column of every
    row inserted before it.  Reducing an incoming row against the stored rows
    in insertion order therefore zeroes it at every pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivcols: list[int] = []
        self._rows: list[list[int]] = []

    @classmethod
    def from_state(cls, ncols: int, pivcols: list[int], rows: list[list[int]]) -> "EchelonImpl":
        self = cls(ncols)
        self._pivcols = list(pivcols)
        self._rows = [list(r) for r in rows]
        return self

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivot_cols(self) -> list[int]:
        return list(self._pivcols)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def add_row(self, row) -> bool:
        """Reduce ``row`` against the current rows; keep it if independent.

        Returns True when the row added a new pivot, False when it reduced
        to zero.
        """
        n = self.ncols
        r = [int(v) for v in row]
        if len(r) != n:
            raise ValueError("row length %d != %d columns" % (len(r), n))
        for idx, pc in enumerate(self._pivcols):
            a = r[pc]
            if not a:
                continue
            p = self._rows[idx]
            lead = p[pc]
            g = 0
            for j in range(n):
                v = lead * r[j] - a * p[j]
                r[j] = v
                g = gcd(g, v)
            if g == 0:
                return False
            if g > 1:
                for j in range(n):
                    r[j] //= g
        pivot = -1
        for j in range(n):
            if r[j]:
                pivot = j
                break
        if pivot < 0:
            return False
        if r[pivot] < 0:
            for j in range(n):
                r[j] = -r[j]
        self._pivcols.append(pivot)
        self._rows.append(r)
        return True
