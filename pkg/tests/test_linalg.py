from __future__ import annotations

import random
from fractions import Fraction

from boreldouble.linalg import (
    BACKEND,
    Echelon,
    Matrix,
    SpanTracker,
    kernel_basis,
    rank,
    solve_system,
)
from boreldouble.linalg import _rowred_py


def test_kernel_identity_trivial():
    assert kernel_basis(Matrix.identity(2)) == []


def test_kernel_one_by_two():
    assert kernel_basis(Matrix([[1, -1]])) == [[Fraction(1), Fraction(1)]]


def test_kernel_of_known_rank_product():
    # m = A (4x3) @ B (3x6) has rank 3, so a 3-dimensional kernel.
    rng = random.Random(7)
    while True:
        a = Matrix([[Fraction(rng.randint(-4, 4)) for _ in range(3)] for _ in range(4)])
        b = Matrix([[Fraction(rng.randint(-4, 4)) for _ in range(6)] for _ in range(3)])
        if rank(a) == 3 and rank(b) == 3:
            break
    m = a @ b
    ker = kernel_basis(m)
    assert len(ker) == 3
    for v in ker:
        assert m.mul_vec(v) == [Fraction(0)] * 4


def test_solve_identity():
    b = [Fraction(3), Fraction(-1, 2)]
    assert solve_system(Matrix.identity(2), b) == b


def test_solve_forced_half():
    assert solve_system(Matrix([[2]]), [1]) == [Fraction(1, 2)]


def test_solve_inconsistent():
    assert solve_system(Matrix([[1], [1]]), [0, 1]) is None


def test_solve_substitutes_exactly():
    rng = random.Random(11)
    for _ in range(20):
        m = Matrix([[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)] for _ in range(3)])
        x0 = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
        b = m.mul_vec(x0)
        x = solve_system(m, b)
        assert x is not None
        assert m.mul_vec(x) == b


def test_rank_plus_kernel_is_cols():
    rng = random.Random(23)
    for _ in range(15):
        r, c = rng.randint(1, 5), rng.randint(1, 7)
        m = Matrix([[Fraction(rng.randint(-3, 3)) for _ in range(c)] for _ in range(r)])
        assert rank(m) + len(kernel_basis(m)) == c


def test_echelon_backends_agree():
    rng = random.Random(5)
    rows = [[rng.randint(-9, 9) for _ in range(8)] for _ in range(12)]
    fast = Echelon(8)
    slow = _rowred_py.EchelonImpl(8)
    for row in rows:
        assert fast.add_row(row) == slow.add_row(row)
    assert fast.rows() == slow.rows()
    assert fast.pivot_cols() == slow.pivot_cols()


def test_echelon_overflow_falls_back_to_pure():
    big = 2**70
    e = Echelon(3)
    assert e.add_row([big, 1, 0])
    assert e.add_row([1, big, 0])
    assert not e.add_row([big + 1, big + 1, 0])
    assert e.backend == "pure" or BACKEND == "pure"
    assert e.rank == 2


def test_echelon_overflow_mid_elimination():
    # Entries fit int64 individually but cross-multiplication would not.
    big = 2**60
    e = Echelon(2)
    assert e.add_row([big, big - 1])
    assert e.add_row([big - 1, big])
    assert e.rank == 2


def test_span_tracker_certificates():
    s = SpanTracker()
    kind, idx = s.add({0: Fraction(1), 1: Fraction(2)})
    assert (kind, idx) == ("new", 0)
    kind, combo = s.add({0: Fraction(2), 1: Fraction(4)})
    assert kind == "dependent" and combo == {0: Fraction(2)}
    s.add({1: Fraction(1)})
    assert s.coefficients({0: Fraction(3), 1: Fraction(7)}) == {0: Fraction(3), 1: Fraction(1)}
    assert s.coefficients({2: Fraction(1)}) is None
