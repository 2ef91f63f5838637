"""Doubled Borel algebras and their one-parameter contraction family.

All four constructions live on sums of Borel-type pieces of a simple algebra
g with triangular decomposition n- + h + n:

* ``build_borel_double``      b + t.b-   with t^2 = 0 and the t-block abelian
* ``build_reduced_double``    b + t.n-   (the previous one with t.h removed)
* ``build_contracted_double`` b + b-     eps-family; eps = 1 splits as g + h
* ``build_contracted_simple`` b + n-     eps-family; eps = 1 collapses onto g

The mixed bracket of (x, y1) against (x2, y2) decomposes m = [x1,y2]-[x2,y1]
into n, h and n- components and distributes them between the two summands
with eps-dependent weights; see each builder for the exact rule.  The
isomorphism witnesses at the bottom (scaling between fibers, the unit-fiber
collapse and split, and the zero-fiber identification with the double) are
returned as maps that have already passed a full bracket-compatibility check.
"""

from __future__ import annotations

from fractions import Fraction

from .chevalley import build_simple
from .liealg import (
    AlgebraMap,
    FalsificationError,
    LieAlgebra,
    check_homomorphism,
)
from .linalg import Echelon, Matrix, scale_to_int
from .rootsys import SimpleType

_SIMPLE_CACHE: dict[str, LieAlgebra] = {}


def simple_algebra(st) -> LieAlgebra:
    """Shared (read-only) Chevalley-basis copy of the simple algebra."""
    st = SimpleType.parse(st) if isinstance(st, str) else st
    key = str(st)
    if key not in _SIMPLE_CACHE:
        _SIMPLE_CACHE[key] = build_simple(st, verify=False)
    return _SIMPLE_CACHE[key]


def _split_parts(g: LieAlgebra, vec: dict) -> tuple[dict, dict, dict]:
    """Components of a vector of g along n, h and n-."""
    part = g.meta["part"]
    x_part: dict = {}
    h_part: dict = {}
    y_part: dict = {}
    for k, v in vec.items():
        if part[k] == "e":
            x_part[k] = v
        elif part[k] == "h":
            h_part[k] = v
        else:
            y_part[k] = v
    return x_part, h_part, y_part


def _put(table, i, j, terms: dict) -> None:
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return
    if i > j:
        i, j = j, i
        terms = {k: -v for k, v in terms.items()}
    table[(i, j)] = tuple(sorted(terms.items()))


def _root_label(root) -> str:
    return ",".join(map(str, root))


def build_borel_double(st) -> LieAlgebra:
    """b + t.b- with bracket ([x1,x2], t(h+y components of m))."""
    g = simple_algebra(st)
    rs = g.meta["root_system"]
    r, npos = rs.rank, len(rs.positive_roots)
    nb = r + npos
    dim = 2 * nb
    # double index: 0..r-1 h, r..nb-1 e, nb..nb+r-1 t.h, nb+r.. t.f
    t_of_g = {}
    for i in range(r):
        t_of_g[i] = nb + i
    for j, root in enumerate(rs.positive_roots):
        t_of_g[g.meta["f_index"][root]] = nb + r + j
    labels = (
        ["h(%d)" % (i + 1) for i in range(r)]
        + ["e(%s)" % _root_label(root) for root in rs.positive_roots]
        + ["th(%d)" % (i + 1) for i in range(r)]
        + ["tf(%s)" % _root_label(root) for root in rs.positive_roots]
    )
    table: dict = {}
    for i in range(nb):
        for j in range(i + 1, nb):
            res = g.bracket_sparse({i: Fraction(1)}, {j: Fraction(1)})
            _put(table, i, j, res)  # [b,b] stays in b with identical indices
        for j in range(nb, dim):
            m = g.bracket_sparse({i: Fraction(1)}, {_g_of_t(j, nb, r): Fraction(1)})
            _, h_part, y_part = _split_parts(g, m)
            terms = {t_of_g[k]: v for k, v in h_part.items()}
            terms.update({t_of_g[k]: v for k, v in y_part.items()})
            _put(table, i, j, terms)
    return LieAlgebra(
        dim=dim,
        labels=labels,
        table=table,
        subspaces={
            "b": tuple(range(nb)),
            "h": tuple(range(r)),
            "n": tuple(range(r, nb)),
            "t_b_minus": tuple(range(nb, dim)),
            "t_h": tuple(range(nb, nb + r)),
            "t_n_minus": tuple(range(nb + r, dim)),
        },
        meta={
            "family": "borel_double",
            "simple_type": g.meta["simple_type"],
            "simple": g,
            "root_system": rs,
            "rank": r,
            "npos": npos,
            "t_of_g": t_of_g,
        },
    )


def _g_of_t(j: int, nb: int, r: int) -> int:
    """Inverse of the t.b- indexing used by build_borel_double."""
    if j < nb + r:
        return j - nb  # t.h index -> h index of g
    return j - r  # t.f index -> f index of g (f block starts at nb in g)


def build_reduced_double(st) -> LieAlgebra:
    """b + t.n-: the double with its central t.h stripped away."""
    g = simple_algebra(st)
    rs = g.meta["root_system"]
    r, npos = rs.rank, len(rs.positive_roots)
    nb = r + npos
    dim = nb + npos
    t_of_g = {g.meta["f_index"][root]: nb + j for j, root in enumerate(rs.positive_roots)}
    labels = (
        ["h(%d)" % (i + 1) for i in range(r)]
        + ["e(%s)" % _root_label(root) for root in rs.positive_roots]
        + ["tf(%s)" % _root_label(root) for root in rs.positive_roots]
    )
    table: dict = {}
    for i in range(nb):
        for j in range(i + 1, nb):
            _put(table, i, j, g.bracket_sparse({i: Fraction(1)}, {j: Fraction(1)}))
        for j in range(nb, dim):
            # the t.f block reuses g's f indices verbatim (both start at nb)
            m = g.bracket_sparse({i: Fraction(1)}, {j: Fraction(1)})
            _, _, y_part = _split_parts(g, m)
            _put(table, i, j, {t_of_g[k]: v for k, v in y_part.items()})
    return LieAlgebra(
        dim=dim,
        labels=labels,
        table=table,
        subspaces={
            "b": tuple(range(nb)),
            "h": tuple(range(r)),
            "n": tuple(range(r, nb)),
            "t_n_minus": tuple(range(nb, dim)),
        },
        meta={
            "family": "reduced_double",
            "simple_type": g.meta["simple_type"],
            "simple": g,
            "root_system": rs,
            "rank": r,
            "npos": npos,
            "t_of_g": t_of_g,
        },
    )


def build_contracted_double(st, eps) -> LieAlgebra:
    """b + b- with the eps-weighted bracket

        ([x1,x2] + eps*X + eps*H/2,  eps*[y1,y2] + H/2 + Y)

    where X + H + Y is the triangular split of m = [x1,y2] - [x2,y1].
    """
    eps = Fraction(eps)
    g = simple_algebra(st)
    rs = g.meta["root_system"]
    r, npos = rs.rank, len(rs.positive_roots)
    nb = r + npos
    dim = 2 * nb
    # 0..r-1 h, r..nb-1 e, nb..nb+r-1 h', nb+r.. f
    second_of_g = {i: nb + i for i in range(r)}
    for j, root in enumerate(rs.positive_roots):
        second_of_g[g.meta["f_index"][root]] = nb + r + j
    labels = (
        ["h(%d)" % (i + 1) for i in range(r)]
        + ["e(%s)" % _root_label(root) for root in rs.positive_roots]
        + ["h'(%d)" % (i + 1) for i in range(r)]
        + ["f(%s)" % _root_label(root) for root in rs.positive_roots]
    )

    def g_of_second(j: int) -> int:
        return j - nb if j < nb + r else j - r

    table: dict = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            if j < nb:  # both in b
                _put(table, i, j, g.bracket_sparse({i: Fraction(1)}, {j: Fraction(1)}))
            elif i >= nb:  # both in b-
                res = g.bracket_sparse({g_of_second(i): Fraction(1)}, {g_of_second(j): Fraction(1)})
                _put(table, i, j, {second_of_g[k]: eps * v for k, v in res.items()})
            else:  # mixed: m = [x_i, y_j]
                m = g.bracket_sparse({i: Fraction(1)}, {g_of_second(j): Fraction(1)})
                x_part, h_part, y_part = _split_parts(g, m)
                terms: dict = {}
                for k, v in x_part.items():
                    terms[k] = terms.get(k, Fraction(0)) + eps * v
                for k, v in h_part.items():
                    terms[k] = terms.get(k, Fraction(0)) + eps * v / 2
                    kk = second_of_g[k]
                    terms[kk] = terms.get(kk, Fraction(0)) + v / 2
                for k, v in y_part.items():
                    terms[second_of_g[k]] = terms.get(second_of_g[k], Fraction(0)) + v
                _put(table, i, j, terms)
    return LieAlgebra(
        dim=dim,
        labels=labels,
        table=table,
        subspaces={
            "b": tuple(range(nb)),
            "h": tuple(range(r)),
            "n": tuple(range(r, nb)),
            "b_minus": tuple(range(nb, dim)),
            "h_second": tuple(range(nb, nb + r)),
            "n_minus": tuple(range(nb + r, dim)),
        },
        meta={
            "family": "contracted_double",
            "eps": eps,
            "simple_type": g.meta["simple_type"],
            "simple": g,
            "root_system": rs,
            "rank": r,
            "npos": npos,
            "second_of_g": second_of_g,
        },
    )


def build_contracted_simple(st, eps) -> LieAlgebra:
    """b + n- with the eps-weighted bracket

        ([x1,x2] + eps*X + eps*H,  eps*[y1,y2] + Y).
    """
    eps = Fraction(eps)
    g = simple_algebra(st)
    rs = g.meta["root_system"]
    r, npos = rs.rank, len(rs.positive_roots)
    nb = r + npos
    dim = nb + npos
    second_of_g = {g.meta["f_index"][root]: nb + j for j, root in enumerate(rs.positive_roots)}
    labels = (
        ["h(%d)" % (i + 1) for i in range(r)]
        + ["e(%s)" % _root_label(root) for root in rs.positive_roots]
        + ["f(%s)" % _root_label(root) for root in rs.positive_roots]
    )
    table: dict = {}
    # the n- block reuses g's f indices verbatim (both start at nb)
    for i in range(dim):
        for j in range(i + 1, dim):
            if j < nb:
                _put(table, i, j, g.bracket_sparse({i: Fraction(1)}, {j: Fraction(1)}))
            elif i >= nb:
                res = g.bracket_sparse({i: Fraction(1)}, {j: Fraction(1)})
                _put(table, i, j, {second_of_g[k]: eps * v for k, v in res.items()})
            else:
                m = g.bracket_sparse({i: Fraction(1)}, {j: Fraction(1)})
                x_part, h_part, y_part = _split_parts(g, m)
                terms = {k: eps * v for k, v in x_part.items()}
                for k, v in h_part.items():
                    terms[k] = terms.get(k, Fraction(0)) + eps * v
                for k, v in y_part.items():
                    terms[second_of_g[k]] = v
                _put(table, i, j, terms)
    return LieAlgebra(
        dim=dim,
        labels=labels,
        table=table,
        subspaces={
            "b": tuple(range(nb)),
            "h": tuple(range(r)),
            "n": tuple(range(r, nb)),
            "n_minus": tuple(range(nb, dim)),
        },
        meta={
            "family": "contracted_simple",
            "eps": eps,
            "simple_type": g.meta["simple_type"],
            "simple": g,
            "root_system": rs,
            "rank": r,
            "npos": npos,
            "second_of_g": second_of_g,
        },
    )


def _require(m: AlgebraMap, what: str) -> AlgebraMap:
    if not check_homomorphism(m):
        raise FalsificationError("%s failed bracket compatibility: %r" % (what, m.failure_witness))
    return m


def scaling_isomorphism(st, eps, plus: bool = False) -> AlgebraMap:
    """(x, y) -> (x, eps*y) from the eps-fiber to the unit fiber, verified.

    Bijective exactly when eps != 0; at eps = 0 it is still a homomorphism
    (the degenerate collapse of the family).
    """
    eps = Fraction(eps)
    build = build_contracted_double if plus else build_contracted_simple
    src = build(st, eps)
    tgt = build(st, 1)
    nb = len(src.subspaces["b"])
    entries = [[Fraction(0)] * src.dim for _ in range(tgt.dim)]
    for j in range(src.dim):
        entries[j][j] = Fraction(1) if j < nb else eps
    return _require(AlgebraMap(src, tgt, Matrix(entries, cols=src.dim)), "fiber scaling")


def unit_fiber_collapse(st) -> AlgebraMap:
    """(x, y) -> x + y identifies the unit fiber of b + n- with g itself."""
    ge = build_contracted_simple(st, 1)
    g = simple_algebra(st)
    # index-for-index: both bases run h, e, f in the same order
    entries = [[Fraction(0)] * ge.dim for _ in range(g.dim)]
    for j in range(ge.dim):
        entries[j][j] = Fraction(1)
    m = _require(AlgebraMap(ge, g, Matrix(entries, cols=ge.dim)), "unit fiber collapse")
    if not m.verified_bijective:
        raise FalsificationError("unit fiber collapse is not bijective")
    return m


def split_unit_fiber(st) -> tuple[AlgebraMap, AlgebraMap]:
    """The unit fiber of b + b- as a direct sum of g and a central Cartan.

    Returns (iota_g, iota_h): the copy of g sends xi + a + zeta (nilpotent,
    Cartan, opposite-nilpotent parts) to (xi + a/2, a/2 + zeta); the central
    copy of h sends a to (-a, a).  Both are verified, images are checked to
    be independent and to fill the fiber, and the h-image is checked central.
    """
    gp = build_contracted_double(st, 1)
    g = simple_algebra(st)
    rs = g.meta["root_system"]
    r, npos = rs.rank, len(rs.positive_roots)
    nb = r + npos
    entries = [[Fraction(0)] * g.dim for _ in range(gp.dim)]
    for i in range(r):  # h_i -> (h_i/2, h_i/2)
        entries[i][i] = Fraction(1, 2)
        entries[nb + i][i] = Fraction(1, 2)
    for j in range(r, nb):  # e -> (e, 0)
        entries[j][j] = Fraction(1)
    for j, root in enumerate(rs.positive_roots):  # f -> (0, f)
        entries[nb + r + j][g.meta["f_index"][root]] = Fraction(1)
    iota_g = _require(AlgebraMap(g, gp, Matrix(entries, cols=g.dim)), "embedding of g in the unit fiber")

    cartan = LieAlgebra(dim=r, labels=["h(%d)" % (i + 1) for i in range(r)], table={})
    entries_h = [[Fraction(0)] * r for _ in range(gp.dim)]
    for i in range(r):  # a -> (-a, a)
        entries_h[i][i] = Fraction(-1)
        entries_h[nb + i][i] = Fraction(1)
    iota_h = _require(AlgebraMap(cartan, gp, Matrix(entries_h, cols=r)), "central Cartan embedding")

    for i in range(r):
        col = {k: entries_h[k][i] for k in range(gp.dim) if entries_h[k][i]}
        if gp.ad_sparse(col):
            raise FalsificationError("Cartan image is not central at column %d" % i)
    ech = Echelon(gp.dim)
    for i in range(g.dim):
        ech.add_row(scale_to_int(iota_g.apply_basis(i)))
    for i in range(r):
        ech.add_row(scale_to_int(iota_h.apply_basis(i)))
    if ech.rank != gp.dim:
        raise FalsificationError("g + h does not fill the unit fiber: rank %d" % ech.rank)
    return iota_g, iota_h


def zero_fiber_iso(st) -> AlgebraMap:
    """(x, a + zeta) -> (x, t(2a + zeta)) from the zero fiber of b + b- onto
    the double b + t.b-, verified bijective."""
    src = build_contracted_double(st, 0)
    tgt = build_borel_double(st)
    r = src.meta["rank"]
    nb = len(src.subspaces["b"])
    entries = [[Fraction(0)] * src.dim for _ in range(tgt.dim)]
    for j in range(src.dim):
        if nb <= j < nb + r:
            entries[j][j] = Fraction(2)
        else:
            entries[j][j] = Fraction(1)
    m = _require(AlgebraMap(src, tgt, Matrix(entries, cols=src.dim)), "zero fiber identification")
    if not m.verified_bijective:
        raise FalsificationError("zero fiber identification is not bijective")
    return m


def reduced_zero_fiber_iso(st) -> AlgebraMap:
    """(x, zeta) -> (x, t.zeta) from the zero fiber of b + n- onto b + t.n-."""
    src = build_contracted_simple(st, 0)
    tgt = build_reduced_double(st)
    entries = [[Fraction(0)] * src.dim for _ in range(tgt.dim)]
    for j in range(src.dim):
        entries[j][j] = Fraction(1)
    m = _require(AlgebraMap(src, tgt, Matrix(entries, cols=src.dim)), "reduced zero fiber identification")
    if not m.verified_bijective:
        raise FalsificationError("reduced zero fiber identification is not bijective")
    return m
