"""Chevalley bases for the simple Lie algebras, with integer structure
constants built from extraspecial root pairs.

Basis order: Cartan elements ``h(1)..h(r)``, then raising elements ``e(..)``
over the positive roots in height-then-lex order, then lowering elements
``f(..)`` in the same order.  Signs follow the convention that every
extraspecial pair gets a positive constant; all other constants are forced
from those by the Jacobi identity.  The construction self-checks the
magnitude rule |N| = p + 1 on every special pair and (optionally) the full
Jacobi identity before returning.
"""

from __future__ import annotations

from fractions import Fraction

from .liealg import FalsificationError, LieAlgebra, check_jacobi
from .rootsys import RootSystem, SimpleType, generate_roots

__all__ = [
    "LieAlgebra",
    "build_simple",
    "cartan_involution",
    "coroot_coordinates",
    "killing_form",
]


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _neg(x):
    return tuple(-a for a in x)


def _is_positive(coords) -> bool:
    return any(coords) and next(v for v in coords if v) > 0


def _chain_down(rs: RootSystem, r, s) -> int:
    """Largest p with s - p*r still a root (the start of the r-string)."""
    p = 0
    cur = _sub(s, r)
    while rs.is_root(cur):
        p += 1
        cur = _sub(cur, r)
    return p


def structure_constants(rs: RootSystem) -> dict[tuple[tuple[int, ...], tuple[int, ...]], int]:
    """N values for all special pairs (r, s): positive roots with r before s
    in the root order and r + s a root."""
    pos = rs.positive_roots
    index = {root: i for i, root in enumerate(pos)}
    pos_set = set(pos)
    n_special: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}

    def n_any(x, y) -> Fraction:
        """N for an arbitrary pair of roots with x + y a root."""
        xp, yp = _is_positive(x), _is_positive(y)
        if xp and yp:
            if index[x] < index[y]:
                return Fraction(n_special[(x, y)])
            return Fraction(-n_special[(y, x)])
        if not xp and not yp:
            return -n_any(_neg(x), _neg(y))
        if not xp:
            return -n_any(y, x)
        s = _add(x, y)
        if _is_positive(s):
            return -rs.bilinear(s, s) / rs.bilinear(x, x) * n_any(_neg(y), s)
        return rs.bilinear(s, s) / rs.bilinear(y, y) * n_any(_neg(s), x)

    for gamma in pos:
        if rs.height(gamma) < 2:
            continue
        decomps = [
            (r, _sub(gamma, r))
            for r in pos
            if _sub(gamma, r) in pos_set and index[r] < index[_sub(gamma, r)]
        ]
        r1, s1 = decomps[0]  # minimal first component: the extraspecial pair
        n_special[(r1, s1)] = _chain_down(rs, r1, s1) + 1
        for r, s in decomps[1:]:
            acc = Fraction(0)
            if rs.is_root(_sub(s1, r)):
                acc += n_any(s1, _neg(r)) * n_any(_sub(s1, r), r1)
            if rs.is_root(_sub(r1, r)):
                acc += n_any(_neg(r), r1) * n_any(_sub(r1, r), s1)
            val = rs.bilinear(gamma, gamma) / rs.bilinear(s, s) / n_special[(r1, s1)] * acc
            if val.denominator != 1:
                raise FalsificationError("non-integer structure constant at %r + %r" % (r, s))
            n_special[(r, s)] = int(val)

    for (r, s), val in n_special.items():
        expected = _chain_down(rs, r, s) + 1
        if abs(val) != expected:
            raise FalsificationError(
                "constant magnitude %d != string length %d at %r + %r" % (abs(val), expected, r, s)
            )
    return n_special


def coroot_coordinates(rs: RootSystem, beta) -> list[Fraction]:
    """Coordinates of the coroot of beta over the simple coroots."""
    d_beta = rs.bilinear(beta, beta) / 2
    out = []
    for i, k in enumerate(beta):
        out.append(Fraction(k) * rs.symmetrizer[i] / d_beta)
    return out


def build_simple(st: SimpleType, verify: bool = True) -> LieAlgebra:
    """The simple Lie algebra of the given type over Q, in a Chevalley basis."""
    rs = generate_roots(st)
    pos = rs.positive_roots
    r, npos = rs.rank, len(pos)
    dim = r + 2 * npos
    e_index = {root: r + i for i, root in enumerate(pos)}
    f_index = {root: r + npos + i for i, root in enumerate(pos)}
    labels = (
        ["h(%d)" % (i + 1) for i in range(r)]
        + ["e(%s)" % ",".join(map(str, root)) for root in pos]
        + ["f(%s)" % ",".join(map(str, root)) for root in pos]
    )

    n_special = structure_constants(rs)
    index = {root: i for i, root in enumerate(pos)}

    def n_signed(x, y) -> int:
        xp, yp = _is_positive(x), _is_positive(y)
        if xp and yp:
            return n_special[(x, y)] if index[x] < index[y] else -n_special[(y, x)]
        if not xp and not yp:
            return -n_signed(_neg(x), _neg(y))
        if not xp:
            return -n_signed(y, x)
        s = _add(x, y)
        if _is_positive(s):
            val = -rs.bilinear(s, s) / rs.bilinear(x, x) * n_signed(_neg(y), s)
        else:
            val = rs.bilinear(s, s) / rs.bilinear(y, y) * n_signed(_neg(s), x)
        assert val.denominator == 1
        return int(val)

    def element_index(root) -> int:
        return e_index[root] if _is_positive(root) else f_index[_neg(root)]

    table: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}

    def put(i: int, j: int, terms: dict[int, Fraction]) -> None:
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return
        if i > j:
            i, j = j, i
            terms = {k: -v for k, v in terms.items()}
        table[(i, j)] = tuple(sorted(terms.items()))

    for i in range(r):
        for root in pos:
            pairing = rs.pairing(root, i)
            if pairing:
                put(i, e_index[root], {e_index[root]: Fraction(pairing)})
                put(i, f_index[root], {f_index[root]: Fraction(-pairing)})

    all_roots = [root for root in pos] + [_neg(root) for root in pos]
    for a in range(len(all_roots)):
        for b in range(a + 1, len(all_roots)):
            x, y = all_roots[a], all_roots[b]
            ix, iy = element_index(x), element_index(y)
            s = _add(x, y)
            if not any(s):  # y == -x: Cartan part
                coro = coroot_coordinates(rs, x if _is_positive(x) else y)
                sign = 1 if _is_positive(x) else -1
                terms = {}
                for i, c in enumerate(coro):
                    if c.denominator != 1:
                        raise FalsificationError("coroot of %r is not integral: %r" % (x, coro))
                    terms[i] = Fraction(sign) * c
                put(ix, iy, terms)
            elif rs.is_root(s):
                put(ix, iy, {element_index(s): Fraction(n_signed(x, y))})

    g = LieAlgebra(
        dim=dim,
        labels=labels,
        table=table,
        subspaces={
            "h": tuple(range(r)),
            "n": tuple(range(r, r + npos)),
            "n_minus": tuple(range(r + npos, dim)),
            "b": tuple(range(r + npos)),
            "b_minus": tuple(range(r)) + tuple(range(r + npos, dim)),
        },
        meta={
            "simple_type": st,
            "root_system": rs,
            "e_index": e_index,
            "f_index": f_index,
            "part": tuple(["h"] * r + ["e"] * npos + ["f"] * npos),
            "root_of": tuple([None] * r + pos + [_neg(root) for root in pos]),
        },
    )
    if verify:
        witness = check_jacobi(g)
        if witness is not None:
            raise FalsificationError("Jacobi failed on %s at triple %r" % (st, witness[:3]))
    return g


def killing_form(g: LieAlgebra):
    """Matrix of trace(ad x . ad y) over the basis."""
    from .linalg import Matrix

    d = g.dim
    entries = [[Fraction(0)] * d for _ in range(d)]
    sparse_cols: list[dict[int, dict[int, Fraction]]] = []
    for i in range(d):
        cols: dict[int, dict[int, Fraction]] = {}
        for j in range(d):
            img = g.bracket_basis(i, j)
            if img:
                cols[j] = dict(img)
        sparse_cols.append(cols)
    for i in range(d):
        for j in range(i, d):
            # trace of ad_i . ad_j: follow k -> [b_j, b_k] -> component along m, then [b_i, b_m] back to k
            tr = Fraction(0)
            for k, img in sparse_cols[j].items():
                for m, c in img.items():
                    back = sparse_cols[i].get(m)
                    if back:
                        tr += c * back.get(k, Fraction(0))
            entries[i][j] = tr
            entries[j][i] = tr
    return Matrix(entries, cols=d)


def cartan_involution(g: LieAlgebra):
    """The order-two automorphism e -> -f, f -> -e, h -> -h, verified."""
    from .liealg import AlgebraMap, check_homomorphism
    from .linalg import Matrix

    d = g.dim
    part = g.meta["part"]
    root_of = g.meta["root_of"]
    e_index, f_index = g.meta["e_index"], g.meta["f_index"]
    entries = [[Fraction(0)] * d for _ in range(d)]
    for j in range(d):
        if part[j] == "h":
            entries[j][j] = Fraction(-1)
        elif part[j] == "e":
            entries[f_index[root_of[j]]][j] = Fraction(-1)
        else:
            entries[e_index[_neg(root_of[j])]][j] = Fraction(-1)
    m = AlgebraMap(g, g, Matrix(entries, cols=d))
    if not check_homomorphism(m):
        raise FalsificationError("involution failed: %r" % (m.failure_witness,))
    return m
