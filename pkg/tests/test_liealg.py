"""Generic Lie-algebra queries, checked against hand-computed small algebras."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from boreldouble.liealg import (
    AlgebraMap,
    FalsificationError,
    LieAlgebra,
    basis_vector,
    bracket_of,
    center,
    check_homomorphism,
    check_jacobi,
    derivations,
    derived_subalgebra,
    exp_ad,
    generated_subalgebra,
    is_ad_nilpotent,
    leibniz_holds,
    normalizer_basis,
    same_span,
    span_dim,
    weight_decomposition,
)
from boreldouble.linalg import Matrix

F = Fraction


def sl2() -> LieAlgebra:
    # basis e, h, f with [h,e]=2e, [h,f]=-2f, [e,f]=h
    return LieAlgebra(
        dim=3,
        labels=["e", "h", "f"],
        table={
            (0, 1): ((0, F(-2)),),
            (0, 2): ((1, F(1)),),
            (1, 2): ((2, F(-2)),),
        },
    )


def heisenberg() -> LieAlgebra:
    # [x, y] = z, z central
    return LieAlgebra(dim=3, labels=["x", "y", "z"], table={(0, 1): ((2, F(1)),)})


def sl2_mixed() -> LieAlgebra:
    # sl2 in the basis h, e+f, e-f: ad(h) is not diagonal here.
    return LieAlgebra(
        dim=3,
        labels=["h", "e+f", "e-f"],
        table={
            (0, 1): ((2, F(2)),),
            (0, 2): ((1, F(2)),),
            (1, 2): ((0, F(-2)),),
        },
    )


def test_bracket_antisymmetry_and_values():
    g = sl2()
    e, h, f = (basis_vector(3, i) for i in range(3))
    assert bracket_of(g, h, e) == [F(2), F(0), F(0)]
    assert bracket_of(g, e, h) == [F(-2), F(0), F(0)]
    assert bracket_of(g, e, f) == [F(0), F(1), F(0)]
    assert bracket_of(g, e, e) == [F(0)] * 3
    # bilinearity on a random combination
    rng = random.Random(7)
    for _ in range(10):
        x = [F(rng.randint(-4, 4)) for _ in range(3)]
        y = [F(rng.randint(-4, 4)) for _ in range(3)]
        s = F(rng.randint(-3, 3))
        lhs = bracket_of(g, [s * v for v in x], y)
        rhs = [s * v for v in bracket_of(g, x, y)]
        assert lhs == rhs


def test_jacobi_passes_and_fails():
    assert check_jacobi(sl2()) is None
    assert check_jacobi(heisenberg()) is None
    broken = LieAlgebra(
        dim=3,
        labels=["e", "h", "f"],
        table={
            (0, 1): ((0, F(-2)),),
            (0, 2): ((1, F(1)), (0, F(1))),  # [e,f] = h + e breaks Jacobi
            (1, 2): ((2, F(-2)),),
        },
    )
    witness = check_jacobi(broken)
    assert witness is not None
    i, j, k, defect = witness
    assert (i, j, k) == (0, 1, 2)
    assert any(v != 0 for v in defect)


def test_center_and_derived():
    g = sl2()
    assert center(g) == []
    assert same_span(derived_subalgebra(g), [basis_vector(3, i) for i in range(3)])

    h = heisenberg()
    z = center(h)
    assert span_dim(z) == 1
    assert same_span(z, [basis_vector(3, 2)])
    assert same_span(derived_subalgebra(h), [basis_vector(3, 2)])


def test_weight_decomposition_diagonal():
    g = sl2()
    dec = weight_decomposition(g, [1])
    assert dec.weights == [(F(-2),), (F(0),), (F(2),)]
    assert [len(s) for s in dec.spaces] == [1, 1, 1]
    assert same_span(dec.zero_space, [basis_vector(3, 1)])
    # the +2 space is spanned by e
    assert same_span(dec.spaces[2], [basis_vector(3, 0)])


def test_weight_decomposition_needs_eigen_solve():
    g = sl2_mixed()
    assert check_jacobi(g) is None
    dec = weight_decomposition(g, [0])
    assert dec.weights == [(F(-2),), (F(0),), (F(2),)]
    # eigenvectors of the off-diagonal action: (e+f) +- (e-f)
    plus = dec.spaces[2][0]
    assert plus[0] == 0 and plus[1] != 0 and plus[1] == plus[2]


def test_weight_decomposition_rejects_nondiagonalizable():
    g = LieAlgebra(
        dim=3,
        labels=["d", "x", "y"],
        table={(0, 1): ((1, F(1)), (2, F(1))), (0, 2): ((2, F(1)),)},
    )
    assert check_jacobi(g) is None
    with pytest.raises(ValueError):
        weight_decomposition(g, [0])


def test_weight_decomposition_rejects_nonabelian_generators():
    with pytest.raises(ValueError):
        weight_decomposition(sl2(), [0, 1])


def test_ad_nilpotent():
    g = sl2()
    assert is_ad_nilpotent(g, basis_vector(3, 0))
    assert is_ad_nilpotent(g, basis_vector(3, 2))
    assert not is_ad_nilpotent(g, basis_vector(3, 1))
    h = heisenberg()
    for i in range(3):
        assert is_ad_nilpotent(h, basis_vector(3, i))


def test_generated_subalgebra_closure_and_replay():
    g = sl2()
    gen = generated_subalgebra(g, [basis_vector(3, 0), basis_vector(3, 2)])
    assert gen.dim == 3
    kinds = [ev[0] for ev in gen.events]
    assert kinds.count("seed") == 2
    assert "new" in kinds  # [e, f] = h opened the third dimension
    # replay inside the same algebra with the identity images reproduces elements
    replayed: list[dict] = []
    for ev in gen.events:
        if ev[0] == "seed":
            replayed.append(gen.elements[len(replayed)])
        elif ev[0] == "new":
            replayed.append(g.bracket_sparse(replayed[ev[1]], replayed[ev[2]]))
        elif ev[0] == "dep":
            got = g.bracket_sparse(replayed[ev[1]], replayed[ev[2]])
            want: dict = {}
            for idx, c in ev[3].items():
                for t, v in replayed[idx].items():
                    want[t] = want.get(t, F(0)) + c * v
            assert got == {k: v for k, v in want.items() if v}
    assert replayed == gen.elements


def test_generated_subalgebra_partial():
    h = heisenberg()
    gen = generated_subalgebra(h, [basis_vector(3, 0)])
    assert gen.dim == 1  # a single element generates only its own line


def test_derivations_heisenberg():
    h = heisenberg()
    ders = derivations(h)
    assert len(ders) == 6
    for d in ders:
        assert leibniz_holds(h, d)


def test_derivations_sl2_all_inner():
    g = sl2()
    ders = derivations(g)
    assert len(ders) == 3
    ads = [g.ad_matrix(basis_vector(3, i)) for i in range(3)]
    flat_ders = [[m.entries[i][j] for i in range(3) for j in range(3)] for m in ders]
    flat_ads = [[m.entries[i][j] for i in range(3) for j in range(3)] for m in ads]
    assert same_span(flat_ders, flat_ads)


def test_derivations_dim_cap():
    from boreldouble.liealg import DimensionCapError

    with pytest.raises(DimensionCapError):
        derivations(sl2(), dim_cap=2)


def test_check_homomorphism_flags_and_witness():
    g = sl2()
    ident = AlgebraMap(g, g, Matrix.identity(3))
    assert check_homomorphism(ident)
    assert ident.verified_homomorphism and ident.verified_bijective

    # e <-> f, h -> -h is an automorphism
    swap = AlgebraMap(g, g, Matrix([[F(0), F(0), F(1)], [F(0), F(-1), F(0)], [F(1), F(0), F(0)]]))
    assert check_homomorphism(swap)

    # e -> 2e alone is not
    bad = AlgebraMap(g, g, Matrix([[F(2), F(0), F(0)], [F(0), F(1), F(0)], [F(0), F(0), F(1)]]))
    assert not check_homomorphism(bad)
    assert bad.failure_witness is not None
    assert not bad.verified_homomorphism


def test_exp_ad():
    g = sl2()
    auto = exp_ad(g, basis_vector(3, 0))
    assert auto.verified_homomorphism and auto.verified_bijective
    # exp(ad e) f = f + h - e
    assert auto.apply(basis_vector(3, 2)) == [F(-1), F(1), F(1)]
    with pytest.raises(ValueError):
        exp_ad(g, basis_vector(3, 1))


def test_exp_ad_heisenberg():
    h = heisenberg()
    auto = exp_ad(h, basis_vector(3, 0))
    assert auto.apply(basis_vector(3, 1)) == [F(0), F(1), F(1)]  # y -> y + z


def test_normalizer_basis():
    g = sl2()
    # the Cartan line is its own normalizer: [ae+bh+cf, h] = -2ae + 2cf
    norm = normalizer_basis(g, [1])
    assert len(norm) == 1 and norm[0][0] == 0 and norm[0][2] == 0
    # the Borel e,h normalizes itself but nothing more
    assert span_dim(normalizer_basis(g, [0, 1])) == 2
    # everything normalizes the center of the Heisenberg algebra
    assert span_dim(normalizer_basis(heisenberg(), [2])) == 3
