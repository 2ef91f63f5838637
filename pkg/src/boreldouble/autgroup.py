"""Automorphism families of the double and its derivation algebra.

Beyond the diagram lifts, the double carries three connected families: the
scaling line fixing b and dilating the t-block, the central translations
x -> x + u(x-bar) driven by maps from the abelianization into the center,
and the torus acting on root spaces through root coordinates.  The
derivation algebra decomposes into a tagged basis (scaling line, inner,
u-type) whose independence and span are certified against the full Leibniz
kernel; passing to the abelianization separates these families (which act
trivially there) from the diagram lifts (which it keeps apart).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .liealg import (
    AlgebraMap,
    FalsificationError,
    LieAlgebra,
    basis_vector,
    check_homomorphism,
    derivations,
    exp_ad,
    leibniz_holds,
    same_span,
)
from .linalg import Echelon, Matrix, scale_to_int


def _t_block(double: LieAlgebra) -> tuple[int, ...]:
    for name in ("t_b_minus", "t_n_minus"):
        if name in double.subspaces:
            return double.subspaces[name]
    raise ValueError("algebra has no t-block")


def _verified(m: AlgebraMap, what: str) -> AlgebraMap:
    if not check_homomorphism(m):
        raise FalsificationError("%s failed bracket compatibility: %r" % (what, m.failure_witness))
    if not m.verified_bijective:
        raise FalsificationError("%s is not bijective" % what)
    return m


def delta_tau(double: LieAlgebra, tau) -> AlgebraMap:
    """The scaling automorphism: identity on b, multiplication by tau on the
    t-block; tau = 0 would collapse the block and is refused."""
    tau = Fraction(tau)
    if tau == 0:
        raise ValueError("tau must be nonzero")
    t_block = set(_t_block(double))
    entries = [[Fraction(0)] * double.dim for _ in range(double.dim)]
    for j in range(double.dim):
        entries[j][j] = tau if j in t_block else Fraction(1)
    return _verified(AlgebraMap(double, double, Matrix(entries, cols=double.dim)), "scaling map")


def u_bar_automorphism(double: LieAlgebra, u: Matrix) -> AlgebraMap:
    """x -> x + u(x-bar), where x-bar is the class of x modulo the derived
    subalgebra (coordinates: the Cartan block) and u must land in the center
    t.h; columns touching any other block are refused."""
    r = double.meta["rank"]
    if u.rows != double.dim or u.cols != r:
        raise ValueError("u must be a %d x %d matrix" % (double.dim, r))
    center_block = set(double.subspaces["t_h"])
    for i in range(u.rows):
        if i in center_block:
            continue
        if any(u.entries[i][m] for m in range(r)):
            raise ValueError("u is not valued in the center")
    entries = [ [Fraction(v) for v in row] for row in Matrix.identity(double.dim).entries ]
    for i in sorted(center_block):
        for m in range(r):
            entries[i][m] += u.entries[i][m]
    return _verified(AlgebraMap(double, double, Matrix(entries, cols=double.dim)), "central translation")


def torus_automorphism(double: LieAlgebra, weights) -> AlgebraMap:
    """Scale each root vector by the product of weights[i]^(i-th root
    coordinate); Cartan blocks are fixed.  A zero weight is refused."""
    weights = [Fraction(w) for w in weights]
    r = double.meta["rank"]
    if len(weights) != r:
        raise ValueError("expected %d weights" % r)
    if any(w == 0 for w in weights):
        raise ValueError("torus weights must be nonzero")
    g = double.meta["simple"]
    part, root_of = g.meta["part"], g.meta["root_of"]
    nb = len(double.subspaces["b"])
    full = "t_h" in double.subspaces
    entries = [[Fraction(0)] * double.dim for _ in range(double.dim)]
    for j in range(double.dim):
        if j < nb:
            gj = j
        elif full:
            gj = j - nb if j < nb + r else j - r
        else:
            gj = j  # the reduced t.f block reuses the f indices of g
        factor = Fraction(1)
        if part[gj] != "h":
            for i, c in enumerate(root_of[gj]):
                factor *= weights[i] ** c
        entries[j][j] = factor
    return _verified(AlgebraMap(double, double, Matrix(entries, cols=double.dim)), "torus map")


@dataclass
class DerivationSpace:
    """A tagged basis of the derivation algebra: one scaling-line matrix,
    the inner derivations, and (when a center is present) the u-type maps
    h -> t.h."""

    algebra: LieAlgebra
    matrices: list[Matrix]
    tags: list[str]

    @property
    def dim(self) -> int:
        return len(self.matrices)

    def by_tag(self, tag: str) -> list[Matrix]:
        return [m for m, t in zip(self.matrices, self.tags) if t == tag]


def scaling_derivation(double: LieAlgebra) -> Matrix:
    """Derivative of the scaling line at tau = 1: zero on b, identity on the
    t-block."""
    t_block = set(_t_block(double))
    entries = [[Fraction(0)] * double.dim for _ in range(double.dim)]
    for j in t_block:
        entries[j][j] = Fraction(1)
    return Matrix(entries, cols=double.dim)


def u_type_derivations(double: LieAlgebra) -> list[Matrix]:
    """The r^2 maps sending one Cartan vector to one central vector."""
    if "t_h" not in double.subspaces:
        return []
    r = double.meta["rank"]
    out = []
    for i in double.subspaces["t_h"]:
        for m in range(r):
            entries = [[Fraction(0)] * double.dim for _ in range(double.dim)]
            entries[i][m] = Fraction(1)
            out.append(Matrix(entries, cols=double.dim))
    return out


def der_decomposition_check(double: LieAlgebra, dim_cap: int | None = None) -> DerivationSpace:
    """Certify that scaling line + inner + u-type is a basis of all
    derivations: every tagged matrix satisfies Leibniz, the family is
    linearly independent, and it spans the full Leibniz kernel."""
    computed = derivations(double, dim_cap)
    center_block = set(double.subspaces.get("t_h", ()))
    tagged: list[tuple[Matrix, str]] = [(scaling_derivation(double), "d-line")]
    for k in range(double.dim):
        if k in center_block:
            continue  # ad of a central vector vanishes
        tagged.append((double.ad_matrix(basis_vector(double.dim, k)), "inner"))
    for m in u_type_derivations(double):
        tagged.append((m, "u-type"))

    g_dim = double.meta["simple"].dim
    r = double.meta["rank"]
    expected = 1 + g_dim + (r * r if center_block else 0)
    if len(tagged) != expected or len(computed) != expected:
        raise FalsificationError(
            "derivation count mismatch: %d tagged, %d computed, %d expected"
            % (len(tagged), len(computed), expected)
        )
    flat_tagged = []
    ech = Echelon(double.dim * double.dim)
    for m, tag in tagged:
        if not leibniz_holds(double, m):
            raise FalsificationError("a %s matrix is not a derivation" % tag)
        flat = [v for row in m.entries for v in row]
        flat_tagged.append(flat)
        ech.add_row(scale_to_int(flat))
    if ech.rank != len(tagged):
        raise FalsificationError("tagged derivation families are not independent")
    flat_computed = [[v for row in m.entries for v in row] for m in computed]
    if not same_span(flat_tagged, flat_computed):
        raise FalsificationError("tagged families do not span the derivation algebra")
    return DerivationSpace(
        algebra=double, matrices=[m for m, _ in tagged], tags=[t for _, t in tagged]
    )


def abelianization_action(m: AlgebraMap) -> Matrix:
    """The induced map on source/[source, source], in Cartan-class
    coordinates; requires the derived part to be preserved."""
    double = m.source
    r = double.meta["rank"]
    for j in range(r, double.dim):
        if any(m.matrix.entries[k][j] for k in range(r)):
            raise FalsificationError("map does not preserve the derived subalgebra")
    return Matrix([[m.matrix.entries[k][mm] for mm in range(r)] for k in range(r)], cols=r)


@dataclass
class SeparationReport:
    samples: dict
    lift_classes: int


def component_separation_check(
    double: LieAlgebra, lifts=None, trials: int = 20, rng: random.Random | None = None
) -> SeparationReport:
    """The connected families act trivially on the abelianization while
    distinct diagram lifts stay distinct there.

    Draws ``trials`` random members of each family (scaling, central
    translation, t-block translation exp ad, torus), checks each induces the
    identity on Cartan classes, and checks the lifts' induced matrices are
    pairwise distinct."""
    rng = rng or random.Random(0)
    r = double.meta["rank"]
    identity = Matrix.identity(r)
    t_block = _t_block(double)
    counts = {"d-line": 0, "u-type": 0, "translation": 0, "torus": 0}

    def nonzero_fraction():
        num = rng.choice([v for v in range(-6, 7) if v])
        den = rng.randrange(1, 7)
        return Fraction(num, den)

    for _ in range(trials):
        maps = {}
        maps["d-line"] = delta_tau(double, nonzero_fraction())
        u = [[Fraction(0)] * r for _ in range(double.dim)]
        for i in double.subspaces["t_h"]:
            for mm in range(r):
                u[i][mm] = Fraction(rng.randrange(-3, 4))
        maps["u-type"] = u_bar_automorphism(double, Matrix(u, cols=r))
        x = [Fraction(0)] * double.dim
        for j in rng.sample(t_block, min(3, len(t_block))):
            x[j] = Fraction(rng.randrange(-3, 4))
        maps["translation"] = exp_ad(double, x)
        maps["torus"] = torus_automorphism(double, [nonzero_fraction() for _ in range(r)])
        for name, m in maps.items():
            if abelianization_action(m) != identity:
                raise FalsificationError("%s family acts nontrivially on Cartan classes" % name)
            counts[name] += 1

    if lifts is None:
        from .diagaut import lift_all

        lifts = [m for _, m in lift_all(double)]
    seen = []
    for m in lifts:
        induced = abelianization_action(m)
        if any(induced == other for other in seen):
            raise FalsificationError("two diagram lifts coincide on Cartan classes")
        seen.append(induced)
    return SeparationReport(samples=dict(counts), lift_classes=len(seen))
