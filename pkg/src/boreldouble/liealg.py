"""Generic queries on finite-dimensional Lie algebras over the rationals.

A :class:`LieAlgebra` is a labeled basis plus a sparse structure-constant
table (stored for i < j only; antisymmetry is implied).  Everything here is
exact: brackets, Jacobi checks, center, derived series, simultaneous weight
decompositions, generation with provenance, derivation algebras,
homomorphism verification and nilpotent exponentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import (
    Echelon,
    Matrix,
    SpanTracker,
    kernel_basis,
    kernel_of_echelon,
    row_space_basis,
    scale_to_int,
)


class FalsificationError(Exception):
    """A verified statement failed on concrete data; carries a witness."""


class DimensionCapError(ValueError):
    """A solve was refused because the algebra exceeds the configured cap."""


@dataclass
class LieAlgebra:
    dim: int
    labels: list[str]
    # (i, j) with i < j  ->  tuple of (k, coefficient); zero brackets omitted
    table: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]
    subspaces: dict[str, tuple[int, ...]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def bracket_basis(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        if i == j:
            return ()
        if i < j:
            return self.table.get((i, j), ())
        return tuple((k, -c) for k, c in self.table.get((j, i), ()))

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, xv in x.items():
            for j, yv in y.items():
                c = xv * yv
                for k, s in self.bracket_basis(i, j):
                    nv = out.get(k, Fraction(0)) + c * s
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def ad_sparse(self, x: dict) -> dict:
        """ad(x) as a sparse matrix {(row, col): coeff}."""
        out: dict = {}
        for i, xv in x.items():
            for j in range(self.dim):
                for k, s in self.bracket_basis(i, j):
                    key = (k, j)
                    nv = out.get(key, Fraction(0)) + xv * s
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return out

    def ad_matrix(self, x) -> Matrix:
        sp = self.ad_sparse(to_sparse(x))
        rows = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (k, j), v in sp.items():
            rows[k][j] = v
        return Matrix(rows, cols=self.dim)

    def subspace_vectors(self, name: str) -> list[list[Fraction]]:
        return [basis_vector(self.dim, i) for i in self.subspaces[name]]


def to_sparse(x) -> dict:
    if isinstance(x, dict):
        return {k: Fraction(v) for k, v in x.items() if v}
    return {i: Fraction(v) for i, v in enumerate(x) if v}


def to_dense(x: dict, dim: int) -> list[Fraction]:
    out = [Fraction(0)] * dim
    for k, v in x.items():
        out[k] = Fraction(v)
    return out


def basis_vector(dim: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(1)
    return v


@dataclass
class AlgebraMap:
    """Linear map between Lie algebras; flags are only set by explicit checks."""

    source: LieAlgebra
    target: LieAlgebra
    matrix: Matrix  # target.dim x source.dim
    verified_homomorphism: bool = False
    verified_bijective: bool = False
    failure_witness: tuple | None = None
    meta: dict = field(default_factory=dict)

    def apply(self, vec) -> list[Fraction]:
        return self.matrix.mul_vec([Fraction(v) for v in vec])

    def apply_basis(self, i: int) -> list[Fraction]:
        return [row[i] for row in self.matrix.entries]

    def compose(self, inner: "AlgebraMap") -> "AlgebraMap":
        if inner.target is not self.source:
            raise ValueError("composition mismatch")
        return AlgebraMap(inner.source, self.target, self.matrix @ inner.matrix)

    def is_identity(self) -> bool:
        return self.source is self.target and self.matrix == Matrix.identity(self.source.dim)


def bracket_of(g: LieAlgebra, x, y) -> list[Fraction]:
    if len(x) != g.dim or len(y) != g.dim:
        raise ValueError("vector length != algebra dimension")
    return to_dense(g.bracket_sparse(to_sparse(x), to_sparse(y)), g.dim)


def check_jacobi(g: LieAlgebra):
    """None if the Jacobi identity holds on all basis triples, else a witness
    (i, j, k, nonzero cyclic sum)."""
    for i in range(g.dim):
        ei = {i: Fraction(1)}
        for j in range(i + 1, g.dim):
            bij = g.bracket_basis(i, j)
            if not bij:
                bij = ()
            ej = {j: Fraction(1)}
            for k in range(j + 1, g.dim):
                ek = {k: Fraction(1)}
                total: dict = {}
                for left, right in ((dict(bij), ek), (g.bracket_basis(j, k), ei), (g.bracket_basis(k, i), ej)):
                    term = g.bracket_sparse(dict(left), right)
                    for idx, v in term.items():
                        nv = total.get(idx, Fraction(0)) + v
                        if nv:
                            total[idx] = nv
                        else:
                            total.pop(idx, None)
                if total:
                    return (i, j, k, to_dense(total, g.dim))
    return None


def center(g: LieAlgebra) -> list[list[Fraction]]:
    """Basis of {x : [x, b_j] = 0 for all j} via one kernel solve."""
    ech = Echelon(g.dim)
    row_map: dict[tuple[int, int], dict] = {}
    for (i, j), terms in g.table.items():
        for k, c in terms:
            rj = row_map.setdefault((j, k), {})
            rj[i] = rj.get(i, Fraction(0)) + c
            ri = row_map.setdefault((i, k), {})
            ri[j] = ri.get(j, Fraction(0)) - c
    for key in sorted(row_map):
        sparse = row_map[key]
        dense = [Fraction(0)] * g.dim
        for i, v in sparse.items():
            dense[i] = v
        ech.add_row(scale_to_int(dense))
    return kernel_of_echelon(ech)


def derived_subalgebra(g: LieAlgebra) -> list[list[Fraction]]:
    rows = []
    for (i, j) in sorted(g.table):
        dense = [Fraction(0)] * g.dim
        for k, c in g.table[(i, j)]:
            dense[k] = c
        rows.append(scale_to_int(dense))
    return row_space_basis(rows, g.dim)


def normalizer_basis(g: LieAlgebra, indices) -> list[list[Fraction]]:
    """Basis of {x : [x, b_c] stays in the span of the given basis indices
    for every c among them}; the span is a subalgebra iff it contains it."""
    inside = set(indices)
    rows = []
    for c in sorted(inside):
        cells: dict[int, dict[int, Fraction]] = {}
        for i in range(g.dim):
            for m, v in g.bracket_basis(i, c):
                if m not in inside and v:
                    cells.setdefault(m, {})[i] = v
        for m in sorted(cells):
            dense = [Fraction(0)] * g.dim
            for i, v in cells[m].items():
                dense[i] = v
            rows.append(dense)
    if not rows:
        return [basis_vector(g.dim, i) for i in range(g.dim)]
    return kernel_basis(Matrix(rows, cols=g.dim))


def span_dim(vectors) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    ech = Echelon(len(vectors[0]))
    for v in vectors:
        ech.add_row(scale_to_int(v))
    return ech.rank


def same_span(vs, ws) -> bool:
    vs, ws = list(vs), list(ws)
    if not vs and not ws:
        return True
    n = len(vs[0]) if vs else len(ws[0])
    return span_dim(vs) == span_dim(ws) == span_dim(vs + ws)


@dataclass
class WeightDecomposition:
    weights: list[tuple[Fraction, ...]]
    spaces: list[list[list[Fraction]]]
    zero_space: list[list[Fraction]]


def _min_poly_roots(r: Matrix) -> list[Fraction]:
    """Distinct rational roots of the minimal polynomial of r; raises if the
    minimal polynomial has an irrational or repeated factor structure that
    prevents a full split (out of this artifact's design envelope)."""
    k = r.rows
    tracker = SpanTracker()
    power = Matrix.identity(k)
    coeffs = None
    while True:
        flat = {(i, j): power.entries[i][j] for i in range(k) for j in range(k) if power.entries[i][j]}
        res = tracker.add(flat)
        if res[0] == "dependent":
            coeffs = res[1]  # power_m = sum coeffs[i] * power_i
            break
        power = r @ power
    deg = len(tracker.members)
    # min poly: x^deg - sum coeffs[i] x^i
    poly = [Fraction(0)] * (deg + 1)
    poly[deg] = Fraction(1)
    for i, c in (coeffs or {}).items():
        poly[i] -= c
    scale = math.lcm(*(c.denominator for c in poly))
    ipoly = [int(c * scale) for c in poly]
    g = 0
    for c in ipoly:
        g = math.gcd(g, c)
    ipoly = [c // g for c in ipoly]
    # rational root candidates p/q with p | ipoly[low], q | ipoly[deg]
    low = next(i for i, c in enumerate(ipoly) if c)
    roots = [Fraction(0)] * (1 if low else 0)
    a0, an = abs(ipoly[low]), abs(ipoly[deg])
    if a0 > 10**15 or an > 10**15:
        raise ValueError("eigenvalue search out of range")

    def divisors(n: int) -> list[int]:
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                val = Fraction(0)
                for c in reversed(ipoly):
                    val = val * cand + c
                if val == 0:
                    roots.append(cand)
    if len(roots) != deg:
        raise ValueError("action is not diagonalizable over Q with rational eigenvalues")
    return sorted(roots)


def _restriction(g: LieAlgebra, generator: dict, block: list[list[Fraction]]) -> Matrix:
    tracker = SpanTracker()
    for v in block:
        kind, _ = tracker.add(to_sparse(v))
        assert kind == "new"
    cols = []
    for v in block:
        image = g.bracket_sparse(generator, to_sparse(v))
        coeff = tracker.coefficients(image)
        if coeff is None:
            raise ValueError("subspace is not invariant under the action")
        cols.append([coeff.get(i, Fraction(0)) for i in range(len(block))])
    return Matrix([[cols[j][i] for j in range(len(block))] for i in range(len(block))], cols=len(block))


def weight_decomposition(g: LieAlgebra, c_indices) -> WeightDecomposition:
    """Simultaneous eigenspace decomposition for the (abelian) action of the
    subalgebra spanned by the given basis indices."""
    c_indices = list(c_indices)
    for a in c_indices:
        for b in c_indices:
            if a < b and g.bracket_basis(a, b):
                raise ValueError("weight subalgebra is not abelian")
    blocks: list[tuple[tuple[Fraction, ...], list[list[Fraction]]]] = [
        ((), [basis_vector(g.dim, i) for i in range(g.dim)])
    ]
    for ci in c_indices:
        gen = {ci: Fraction(1)}
        refined = []
        for weight, vecs in blocks:
            r = _restriction(g, gen, vecs)
            k = r.rows
            if all(r.entries[i][j] == 0 for i in range(k) for j in range(k) if i != j):
                groups: dict[Fraction, list[int]] = {}
                for i in range(k):
                    groups.setdefault(r.entries[i][i], []).append(i)
                for ev in sorted(groups):
                    refined.append((weight + (ev,), [vecs[i] for i in groups[ev]]))
                continue
            total = 0
            for ev in _min_poly_roots(r):
                shifted = Matrix(
                    [[r.entries[i][j] - (ev if i == j else 0) for j in range(k)] for i in range(k)], cols=k
                )
                ker = kernel_basis(shifted)
                if not ker:
                    continue
                total += len(ker)
                lifted = []
                for coeffs in ker:
                    vec = [Fraction(0)] * g.dim
                    for idx, cf in enumerate(coeffs):
                        if cf:
                            for t, vv in enumerate(vecs[idx]):
                                vec[t] += cf * vv
                    lifted.append(vec)
                refined.append((weight + (ev,), lifted))
            if total != k:
                raise ValueError("action is not diagonalizable over Q")
        blocks = refined
    blocks.sort(key=lambda wb: wb[0])
    weights = [w for w, _ in blocks]
    spaces = [vs for _, vs in blocks]
    zero = tuple(Fraction(0) for _ in c_indices)
    zero_space = next((vs for w, vs in blocks if w == zero), [])
    return WeightDecomposition(weights=weights, spaces=spaces, zero_space=zero_space)


def is_ad_nilpotent(g: LieAlgebra, x) -> bool:
    m = g.ad_matrix(x)
    zero = Matrix.zero(g.dim, g.dim)
    power = m
    steps = 1
    while steps < g.dim:
        if power == zero:
            return True
        power = power @ power
        steps *= 2
    return power == zero


@dataclass
class GeneratedSubalgebra:
    """Bracket closure of the seeds, with replayable provenance.

    ``elements`` are the closure basis (sparse).  ``events`` records, in
    order, how the closure was produced: ("seed", s) for a seed that opened a
    new dimension, ("seed_dep", s, combo) for a redundant seed, ("new", i, j)
    for a bracket [el_i, el_j] that extended the span, and ("dep", i, j,
    combo) for one that landed in it (combo maps element index ->
    coefficient, empty when the bracket vanished).  A lift of the generators
    extends to the whole closure by replaying exactly these events.
    """

    elements: list[dict]
    events: list[tuple]
    tracker: SpanTracker

    @property
    def dim(self) -> int:
        return len(self.elements)

    def dense_basis(self, dim: int) -> list[list[Fraction]]:
        return [to_dense(e, dim) for e in self.elements]


def generated_subalgebra(g: LieAlgebra, seeds) -> GeneratedSubalgebra:
    tracker = SpanTracker()
    elements: list[dict] = []
    events: list[tuple] = []
    pair_queue: list[tuple[int, int]] = []

    def push(vec: dict, provenance: tuple) -> None:
        kind, payload = tracker.add(vec)
        if kind == "new":
            idx = len(elements)
            elements.append({k: Fraction(v) for k, v in vec.items() if v})
            events.append(provenance)
            for other in range(idx):
                pair_queue.append((other, idx))
        elif provenance[0] == "seed":
            events.append(("seed_dep", provenance[1], payload))
        else:
            events.append(("dep", provenance[1], provenance[2], payload))

    for si, s in enumerate(seeds):
        sp = to_sparse(s)
        if not sp:
            raise ValueError("zero generator")
        push(sp, ("seed", si))
    head = 0
    while head < len(pair_queue):
        i, j = pair_queue[head]
        head += 1
        vec = g.bracket_sparse(elements[i], elements[j])
        if vec:
            push(vec, ("new", i, j))
        else:
            events.append(("dep", i, j, {}))
    return GeneratedSubalgebra(elements=elements, events=events, tracker=tracker)


def leibniz_rows(g: LieAlgebra):
    """Integer rows of the Leibniz system over the d^2 matrix unknowns,
    one per basis pair and output coordinate with any nonzero entry."""
    d = g.dim
    # forward[a] : k -> [(m, coeff of b_k in [b_a, b_m])]
    forward: list[dict[int, list[tuple[int, Fraction]]]] = [dict() for _ in range(d)]
    for (i, j), terms in g.table.items():
        for k, c in terms:
            forward[i].setdefault(k, []).append((j, c))
            forward[j].setdefault(k, []).append((i, -c))
    for i in range(d):
        for j in range(i + 1, d):
            terms_ij = g.table.get((i, j), ())
            for k in range(d):
                row: dict[int, Fraction] = {}

                def bump(col: int, val: Fraction) -> None:
                    nv = row.get(col, Fraction(0)) + val
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)

                for l, c in terms_ij:
                    bump(k * d + l, c)
                for m, c in forward[j].get(k, ()):  # c = c_{jm}^k = -c_{mj}^k
                    bump(m * d + i, c)
                for m, c in forward[i].get(k, ()):
                    bump(m * d + j, -c)
                if not row:
                    continue
                den = math.lcm(*(v.denominator for v in row.values()))
                dense = [0] * (d * d)
                for col, v in row.items():
                    dense[col] = int(v * den)
                yield dense


def derivations(g: LieAlgebra, dim_cap: int | None = None) -> list[Matrix]:
    """All D with D[x,y] = [Dx,y] + [x,Dy], as a kernel of the Leibniz system
    over the d^2 matrix unknowns (d^3 equations)."""
    d = g.dim
    if dim_cap is not None and d > dim_cap:
        raise DimensionCapError("dimension %d exceeds cap %d" % (d, dim_cap))
    ech = Echelon(d * d)
    for dense in leibniz_rows(g):
        ech.add_row(dense)
    kernel = kernel_of_echelon(ech)
    out = []
    for vec in kernel:
        out.append(Matrix([[vec[k * d + l] for l in range(d)] for k in range(d)], cols=d))
    return out


def leibniz_holds(g: LieAlgebra, m: Matrix) -> bool:
    cols = [
        {k: m.entries[k][j] for k in range(g.dim) if m.entries[k][j]} for j in range(g.dim)
    ]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            defect: dict = {}
            for k, c in g.bracket_basis(i, j):
                for kk, v in cols[k].items():
                    nv = defect.get(kk, Fraction(0)) + c * v
                    if nv:
                        defect[kk] = nv
                    else:
                        defect.pop(kk, None)
            for term in (g.bracket_sparse(cols[i], {j: Fraction(1)}), g.bracket_sparse({i: Fraction(1)}, cols[j])):
                for kk, v in term.items():
                    nv = defect.get(kk, Fraction(0)) - v
                    if nv:
                        defect[kk] = nv
                    else:
                        defect.pop(kk, None)
            if defect:
                return False
    return True


def check_homomorphism(m: AlgebraMap) -> bool:
    """Full-basis bracket-compatibility check; sets the map's flags."""
    src, tgt = m.source, m.target
    if m.matrix.cols != src.dim or m.matrix.rows != tgt.dim:
        raise ValueError("matrix shape does not match source/target")
    images = [to_sparse(m.apply_basis(i)) for i in range(src.dim)]
    ok = True
    m.failure_witness = None
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            lhs: dict = {}
            for k, c in src.bracket_basis(i, j):
                for t, v in images[k].items():
                    lhs[t] = lhs.get(t, Fraction(0)) + c * v
            lhs = {t: v for t, v in lhs.items() if v}
            rhs = tgt.bracket_sparse(images[i], images[j])
            if lhs != rhs:
                ok = False
                m.failure_witness = (i, j, to_dense(lhs, tgt.dim), to_dense(rhs, tgt.dim))
                break
        if not ok:
            break
    m.verified_homomorphism = ok
    if src.dim == tgt.dim:
        ech = Echelon(src.dim)
        for row in m.matrix.entries:
            ech.add_row(scale_to_int(row))
        m.verified_bijective = ech.rank == src.dim
    else:
        m.verified_bijective = False
    return ok


def exp_ad(g: LieAlgebra, x) -> AlgebraMap:
    """exp(ad x) for ad-nilpotent x, returned as a verified automorphism."""
    if not is_ad_nilpotent(g, x):
        raise ValueError("element is not ad-nilpotent")
    a = g.ad_matrix(x)
    total = Matrix.identity(g.dim)
    term = Matrix.identity(g.dim)
    k = 1
    while True:
        term = a @ term
        if all(v == 0 for row in term.entries for v in row):
            break
        scaled = Matrix([[v / math.factorial(k) for v in row] for row in term.entries], cols=g.dim)
        total = Matrix(
            [[total.entries[i][j] + scaled.entries[i][j] for j in range(g.dim)] for i in range(g.dim)],
            cols=g.dim,
        )
        k += 1
    out = AlgebraMap(g, g, total)
    if not check_homomorphism(out):
        raise FalsificationError("exp(ad x) failed the automorphism check: %r" % (out.failure_witness,))
    return out
