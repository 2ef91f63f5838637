"""Exact rational linear algebra: kernels, solving, rank.

Everything runs over :class:`fractions.Fraction` (``Scalar``); there is no
floating point anywhere.  The elimination core works on integer rows (each
rational row is scaled by the lcm of its denominators) and comes in two
interchangeable backends:

* ``boreldouble.linalg._rowred`` — compiled (Cython) int64 fast path,
* ``boreldouble.linalg._rowred_py`` — pure Python, arbitrary precision.

The compiled backend is preferred when importable; set ``BORELDOUBLE_PURE=1``
to force the pure one.  If a compiled elimination would overflow int64, the
affected :class:`Echelon` transparently migrates its state to the pure
backend and continues, so results never depend on the backend.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd, lcm

from . import _rowred_py as _pure

if os.environ.get("BORELDOUBLE_PURE"):
    _fast = _pure
    BACKEND = "pure"
else:
    try:
        from . import _rowred as _fast  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _fast = _pure
        BACKEND = "pure"

Scalar = Fraction


class Matrix:
    """Dense row-major matrix over Scalar."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols: int | None = None):
        self.entries = [[Fraction(v) for v in row] for row in entries]
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
            if any(len(r) != self.cols for r in self.entries):
                raise ValueError("ragged rows")
            if cols is not None and cols != self.cols:
                raise ValueError("cols mismatch")
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.cols = cols

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)], cols=cols)

    def mul_vec(self, v) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length %d != %d columns" % (len(v), self.cols))
        return [sum((row[j] * v[j] for j in range(self.cols)), Fraction(0)) for row in self.entries]

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = other.cols
        out = []
        for row in self.entries:
            out.append(
                [sum((row[k] * other.entries[k][j] for k in range(self.cols)), Fraction(0)) for j in range(cols)]
            )
        return Matrix(out, cols=cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.matmul(other)

    def transpose(self) -> "Matrix":
        return Matrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return "Matrix(%d x %d)" % (self.rows, self.cols)


class Echelon:
    """Incremental integer row echelon with automatic backend fallback.

    Feed rows with :meth:`add_row`; query ``rank``, ``pivot_cols`` and the
    normalized ``rows`` at any point.  Rows may be arbitrary integers: the
    compiled backend bails out with OverflowError when int64 would not be
    enough, at which point the state is migrated to the pure backend.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._impl = _fast.EchelonImpl(ncols)
        self._pure = _fast is _pure

    def _migrate(self) -> None:
        self._impl = _pure.EchelonImpl.from_state(self.ncols, self._impl.pivot_cols(), self._impl.rows())
        self._pure = True

    def add_row(self, row) -> bool:
        if self._pure:
            return self._impl.add_row(row)
        try:
            return self._impl.add_row(row)
        except OverflowError:
            self._migrate()
            return self._impl.add_row(row)

    @property
    def rank(self) -> int:
        return self._impl.rank

    @property
    def backend(self) -> str:
        return "pure" if self._pure else "compiled"

    def pivot_cols(self) -> list[int]:
        return self._impl.pivot_cols()

    def rows(self) -> list[list[int]]:
        return self._impl.rows()


def _int_rows(m: Matrix):
    """Scale each nonzero row of m to a primitive integer row."""
    out = []
    for row in m.entries:
        den = lcm(*(v.denominator for v in row)) if row else 1
        ints = [int(v * den) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g == 0:
            continue
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _rref_from_echelon(ech: Echelon) -> list[tuple[int, list[Fraction]]]:
    """Fully reduced rows (leading 1, zeros above and below each pivot)."""
    pairs = sorted(zip(ech.pivot_cols(), ech.rows()))
    rows = [(pc, [Fraction(v) for v in r]) for pc, r in pairs]
    for i in range(len(rows) - 1, -1, -1):
        pc, r = rows[i]
        lead = r[pc]
        if lead != 1:
            rows[i] = (pc, [v / lead for v in r])
            r = rows[i][1]
        for k in range(i):
            a = rows[k][1][pc]
            if a:
                rows[k] = (rows[k][0], [x - a * y for x, y in zip(rows[k][1], r)])
    return rows


def rank(m: Matrix) -> int:
    ech = Echelon(m.cols)
    for row in _int_rows(m):
        ech.add_row(row)
    return ech.rank


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    den = lcm(*(v.denominator for v in vec))
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return [Fraction(v) for v in ints]


def kernel_basis(m: Matrix) -> list[list[Fraction]]:
    """Basis of {v : m v = 0}, one primitive integer vector per free column."""
    n = m.cols
    ech = Echelon(n)
    for row in _int_rows(m):
        ech.add_row(row)
    rref = _rref_from_echelon(ech)
    pivots = {pc: r for pc, r in rref}
    basis = []
    for f in range(n):
        if f in pivots:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for pc, r in pivots.items():
            v[pc] = -r[f]
        basis.append(_primitive(v))
    return basis


def kernel_of_echelon(ech: Echelon) -> list[list[Fraction]]:
    """Kernel basis read off an already-populated echelon (same form as
    kernel_basis: primitive vectors, one per free column)."""
    n = ech.ncols
    rref = _rref_from_echelon(ech)
    pivots = {pc: r for pc, r in rref}
    basis = []
    for f in range(n):
        if f in pivots:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for pc, r in pivots.items():
            v[pc] = -r[f]
        basis.append(_primitive(v))
    return basis


def scale_to_int(vec) -> list[int]:
    """Clear denominators of a rational vector (no gcd reduction)."""
    vec = [Fraction(v) for v in vec]
    den = lcm(*(v.denominator for v in vec)) if vec else 1
    return [int(v * den) for v in vec]


def row_space_basis(int_rows, ncols: int) -> list[list[Fraction]]:
    """Canonical (RREF, primitive, pivot-ordered) basis of the row space."""
    ech = Echelon(ncols)
    for row in int_rows:
        ech.add_row(row)
    return [_primitive(r) for _, r in _rref_from_echelon(ech)]


def solve_system(m: Matrix, b) -> list[Fraction] | None:
    """Some x with m x = b, or None if inconsistent (checked by substitution)."""
    if len(b) != m.rows:
        raise ValueError("rhs length %d != %d rows" % (len(b), m.rows))
    n = m.cols
    aug = Matrix([list(row) + [Fraction(bv)] for row, bv in zip(m.entries, b)], cols=n + 1) if m.rows else None
    if aug is None:
        return [Fraction(0)] * n
    ech = Echelon(n + 1)
    for row in _int_rows(aug):
        ech.add_row(row)
    rref = _rref_from_echelon(ech)
    x = [Fraction(0)] * n
    for pc, r in rref:
        if pc == n:
            return None
        x[pc] = r[n]
    check = m.mul_vec(x)
    assert all(cv == Fraction(bv) for cv, bv in zip(check, b)), "internal solver error"
    return x


class SpanTracker:
    """Sparse incremental span with membership certificates.

    Vectors are dicts key -> Fraction over an arbitrary orderable key space.
    ``add`` either records the vector as a new independent member (returning
    its index) or returns the exact coefficients expressing it over the
    members added so far.  Used wherever bracket-closure needs linear
    bookkeeping (generated subalgebras, automorphism lifts).
    """

    def __init__(self):
        self.members: list[dict] = []
        self._rows: list[tuple[object, dict, dict]] = []  # (pivot, rowvec, combo)

    def _reduce(self, vec: dict, combo: dict):
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        for pivot, row, rcombo in self._rows:
            c = vec.get(pivot)
            if not c:
                continue
            for k, v in row.items():
                nv = vec.get(k, Fraction(0)) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in rcombo.items():
                nv = combo.get(k, Fraction(0)) - c * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec

    def add(self, vec: dict):
        """Returns ("new", index) or ("dependent", {member-index: coeff})."""
        idx = len(self.members)
        combo = {idx: Fraction(1)}
        red = self._reduce(vec, combo)
        if not red:
            combo.pop(idx, None)
            return ("dependent", {k: -v for k, v in combo.items()})
        self.members.append({k: Fraction(v) for k, v in vec.items() if v})
        pivot = min(red)
        lead = red[pivot]
        row = {k: v / lead for k, v in red.items()}
        rcombo = {k: v / lead for k, v in combo.items()}
        self._rows.append((pivot, row, rcombo))
        return ("new", idx)

    def coefficients(self, vec: dict):
        """Coefficients of vec over the members, or None if outside the span."""
        combo: dict = {}
        red = self._reduce(vec, combo)
        if red:
            return None
        return {k: -v for k, v in combo.items()}

    @property
    def dim(self) -> int:
        return len(self._rows)


__all__ = [
    "BACKEND",
    "Echelon",
    "Matrix",
    "Scalar",
    "SpanTracker",
    "kernel_basis",
    "kernel_of_echelon",
    "rank",
    "row_space_basis",
    "scale_to_int",
    "solve_system",
]
