"""Doubled Borel algebras, the contraction family, and the fiber maps."""

from __future__ import annotations

from fractions import Fraction

import pytest

from boreldouble.doubles import (
    build_borel_double,
    build_contracted_double,
    build_contracted_simple,
    build_reduced_double,
    reduced_zero_fiber_iso,
    scaling_isomorphism,
    simple_algebra,
    split_unit_fiber,
    unit_fiber_collapse,
    zero_fiber_iso,
)
from boreldouble.liealg import (
    basis_vector,
    bracket_of,
    center,
    check_jacobi,
    derived_subalgebra,
    same_span,
    weight_decomposition,
)
from boreldouble.linalg import Matrix

F = Fraction

TYPES = ["A1", "A2", "B2", "G2"]
EPSILONS = [F(0), F(1), F(3, 5), F(-2)]


def test_borel_double_sl2_table():
    d = build_borel_double("A1")  # basis h, e, th, tf
    assert d.dim == 4
    assert d.labels == ["h(1)", "e(1)", "th(1)", "tf(1)"]
    h, e, th, tf = (basis_vector(4, i) for i in range(4))
    assert bracket_of(d, h, e) == [F(0), F(2), F(0), F(0)]
    assert bracket_of(d, e, tf) == [F(0), F(0), F(1), F(0)]  # [e, tf] = th
    assert bracket_of(d, h, tf) == [F(0), F(0), F(0), F(-2)]
    assert bracket_of(d, e, th) == [F(0)] * 4  # the n-component is cut off
    assert bracket_of(d, th, tf) == [F(0)] * 4


def test_borel_double_jacobi_center_derived():
    for name in TYPES:
        d = build_borel_double(name)
        assert check_jacobi(d) is None, name
        z = center(d)
        assert same_span(z, [basis_vector(d.dim, i) for i in d.subspaces["t_h"]]), name
        expected = [basis_vector(d.dim, i) for i in d.subspaces["n"] + d.subspaces["t_b_minus"]]
        assert same_span(derived_subalgebra(d), expected), name


def test_reduced_double_jacobi_and_center():
    for name in TYPES:
        d = build_reduced_double(name)
        assert check_jacobi(d) is None, name
        # stripping t.h leaves only the highest-root line t.f_theta central?  No:
        # everything in t.n- that n kills; for the reduced double the center is
        # the t-image of the n- vectors annihilated by all of b.
        z = center(d)
        for v in z:
            assert all(v[i] == 0 for i in d.subspaces["b"]), name


def test_contraction_family_jacobi():
    for name in TYPES:
        for eps in EPSILONS:
            dp = build_contracted_double(name, eps)
            ds = build_contracted_simple(name, eps)
            assert check_jacobi(dp) is None, (name, eps)
            assert check_jacobi(ds) is None, (name, eps)


def test_unit_fiber_collapse():
    for name in TYPES:
        m = unit_fiber_collapse(name)
        assert m.verified_homomorphism and m.verified_bijective, name


def test_scaling_isomorphism_nonzero_eps():
    for name in ["A1", "A2", "B2"]:
        for eps in [F(1), F(3, 5), F(-2), F(7, 3)]:
            for plus in (False, True):
                m = scaling_isomorphism(name, eps, plus=plus)
                assert m.verified_homomorphism, (name, eps, plus)
                assert m.verified_bijective, (name, eps, plus)


def test_scaling_map_degenerates_at_zero():
    m = scaling_isomorphism("A2", 0)
    assert m.verified_homomorphism
    assert not m.verified_bijective


def test_zero_fiber_isomorphisms():
    for name in TYPES:
        m = zero_fiber_iso(name)
        assert m.verified_homomorphism and m.verified_bijective, name
        red = reduced_zero_fiber_iso(name)
        assert red.verified_homomorphism and red.verified_bijective, name
        assert red.matrix == Matrix.identity(red.source.dim), name  # table-identical


def test_split_unit_fiber():
    for name in TYPES:
        iota_g, iota_h = split_unit_fiber(name)
        assert iota_g.verified_homomorphism, name
        assert iota_h.verified_homomorphism, name
        g = simple_algebra(name)
        assert iota_g.source is g
        assert iota_h.source.dim == g.meta["root_system"].rank


def test_contracted_double_center_dimension_is_rank():
    for name in ["A1", "A2", "B2"]:
        for eps in EPSILONS:
            d = build_contracted_double(name, eps)
            assert len(center(d)) == d.meta["rank"], (name, eps)


def test_center_location_moves_with_eps():
    # at eps = 0 the center is the second Cartan copy; at eps = 1 it is the
    # anti-diagonal (-a, a)
    d0 = build_contracted_double("A2", 0)
    z0 = center(d0)
    assert same_span(z0, [basis_vector(d0.dim, i) for i in d0.subspaces["h_second"]])
    d1 = build_contracted_double("A2", 1)
    z1 = center(d1)
    r = d1.meta["rank"]
    nb = len(d1.subspaces["b"])
    expected = []
    for i in range(r):
        v = [F(0)] * d1.dim
        v[i], v[nb + i] = F(-1), F(1)
        expected.append(v)
    assert same_span(z1, expected)


def test_double_weights_match_roots():
    d = build_borel_double("A2")
    rs = d.meta["root_system"]
    dec = weight_decomposition(d, range(rs.rank))
    weight_set = {w for w in dec.weights}
    roots = set()
    for root in rs.positive_roots:
        pairing = tuple(F(rs.pairing(root, i)) for i in range(rs.rank))
        roots.add(pairing)
        roots.add(tuple(-p for p in pairing))
    assert weight_set == roots | {(F(0), F(0))}
    zero = tuple(F(0) for _ in range(rs.rank))
    for w, vs in zip(dec.weights, dec.spaces):
        if w == zero:
            assert len(vs) == 2 * rs.rank  # h + t.h
        else:
            assert len(vs) == 1


def test_contracted_simple_at_one_matches_simple_dimension():
    for name in TYPES:
        ds = build_contracted_simple(name, 1)
        g = simple_algebra(name)
        assert ds.dim == g.dim
        assert len(center(ds)) == 0, name
        assert len(derived_subalgebra(ds)) == ds.dim, name


def test_epsilon_accepts_strings_and_ints():
    a = build_contracted_simple("A1", "3/5")
    b = build_contracted_simple("A1", F(3, 5))
    assert a.table == b.table
    c = build_contracted_simple("A1", 2)
    assert c.meta["eps"] == F(2)
