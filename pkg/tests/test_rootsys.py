from __future__ import annotations

import pytest

from boreldouble.rootsys import (
    SimpleType,
    extended_cartan_via_strings,
    generate_roots,
    lowest_root,
)

# (type, number of positive roots) — classical dimension bookkeeping:
# dim g = 2*|Phi+| + rank.
POSITIVE_COUNTS = {
    "A1": 1,
    "A2": 3,
    "A3": 6,
    "B2": 4,
    "B3": 9,
    "C2": 4,
    "C3": 9,
    "D4": 12,
    "D5": 20,
    "G2": 6,
    "F4": 24,
    "E6": 36,
}


def test_parse():
    assert SimpleType.parse("a2") == SimpleType("A", 2)
    assert SimpleType.parse("D4").rank == 4
    with pytest.raises(ValueError):
        SimpleType.parse("Z9")
    with pytest.raises(ValueError):
        SimpleType.parse("A")


def test_rank_bounds():
    for bad in [("B", 1), ("C", 1), ("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3)]:
        with pytest.raises(ValueError):
            SimpleType(*bad)


def test_positive_root_counts():
    for name, count in POSITIVE_COUNTS.items():
        rs = generate_roots(SimpleType.parse(name))
        assert len(rs.positive_roots) == count, name


def test_a1_forced():
    rs = generate_roots(SimpleType("A", 1))
    assert rs.positive_roots == [(1,)]
    assert rs.cartan == [[2]]
    assert lowest_root(rs) == (-1,)


def test_a2_closure():
    rs = generate_roots(SimpleType("A", 2))
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert lowest_root(rs) == (-1, -1)


def test_g2_closure():
    rs = generate_roots(SimpleType("G", 2))
    assert rs.cartan == [[2, -3], [-1, 2]]
    assert len(rs.positive_roots) == 6
    assert rs.highest == (3, 2)
    assert lowest_root(rs) == (-3, -2)


def test_negatives_are_roots():
    for name in ["A3", "B3", "C3", "D4", "F4"]:
        rs = generate_roots(SimpleType.parse(name))
        for r in rs.positive_roots:
            assert rs.is_root(tuple(-c for c in r))
        # all-positive or all-negative coordinates
        for r in rs.root_set:
            assert all(c >= 0 for c in r) or all(c <= 0 for c in r)


def test_extended_cartan_a1():
    rs = generate_roots(SimpleType("A", 1))
    assert rs.extended_cartan == [[2, -2], [-2, 2]]
    assert rs.marks == (1, 1)


def test_extended_cartan_a2():
    rs = generate_roots(SimpleType("A", 2))
    assert rs.extended_cartan == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert rs.marks == (1, 1, 1)


def test_extended_cartan_c2():
    # chain alpha0 => alpha1 <= alpha2 (double bonds at both ends)
    rs = generate_roots(SimpleType("C", 2))
    assert rs.extended_cartan == [[2, -1, 0], [-2, 2, -2], [0, -1, 2]]
    assert rs.marks == (1, 2, 1)


def test_extended_cartan_g2():
    rs = generate_roots(SimpleType("G", 2))
    assert rs.marks == (1, 3, 2)
    assert rs.extended_cartan[0][2] == -1 and rs.extended_cartan[2][0] == -1
    assert rs.extended_cartan[0][1] == 0


def test_extended_restricts_to_finite():
    for name in ["A2", "B3", "C3", "D4", "G2", "F4"]:
        rs = generate_roots(SimpleType.parse(name))
        inner = [row[1:] for row in rs.extended_cartan[1:]]
        assert inner == rs.cartan, name


def test_marks_relation_is_zero_functional():
    for name in POSITIVE_COUNTS:
        rs = generate_roots(SimpleType.parse(name))
        n = rs.rank
        combo = [sum(rs.marks[a] * rs.node_roots()[a][j] for a in range(n + 1)) for j in range(n)]
        assert combo == [0] * n


def test_string_formula_round_trip():
    for name in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4"]:
        rs = generate_roots(SimpleType.parse(name))
        assert extended_cartan_via_strings(rs) == rs.extended_cartan, name


def test_cartan_diag_and_signs():
    for name in POSITIVE_COUNTS:
        rs = generate_roots(SimpleType.parse(name))
        n = rs.rank
        for i in range(n):
            assert rs.cartan[i][i] == 2
            for j in range(n):
                if i != j:
                    assert rs.cartan[i][j] <= 0
