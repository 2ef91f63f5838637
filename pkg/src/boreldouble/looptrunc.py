"""Loop-algebra windows, the Borel quotient by (t - eps), and lifted
diagram automorphisms with their semilinearity sign.

A :class:`PolyVector` is an element of g tensored with Laurent polynomials,
kept inside a hard degree window: brackets that would leave the window raise
:class:`WindowOverflowError` rather than truncating silently.

``build_borel_quotient`` realizes b + t*g[t] modulo (t - eps)*(n + t*g[t]).
Normal forms have degree <= 1, with basis h, e (degree 0) and t.h, t.f
(degree 1); products are computed in a [0, 2] window and reduced by

    t^(j+1) x = eps * t^j x   (x in n,  j >= 0)
    t^(j+1) y = eps * t^j y   (y in h + n-,  j >= 1).

``gamma_eps`` / ``theta_retraction`` are the mutually inverse maps between
this quotient and the eps-fiber of the contraction family on b + b-.

``lift_to_loop`` extends a diagram automorphism from generator images to the
bracket span of the generators inside the window, checking every linear
dependence for consistency, and ``semilinearity_lambda`` extracts the sign
lam with lifted(t*v) = lam * t * lifted(v).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagaut import DiagramAutomorphism
from .doubles import build_contracted_double, simple_algebra
from .liealg import AlgebraMap, FalsificationError, LieAlgebra
from .linalg import Matrix, SpanTracker


class WindowOverflowError(Exception):
    """A bracket produced a degree outside the fixed window."""


@dataclass
class PolyVector:
    algebra: LieAlgebra  # the underlying simple algebra
    terms: dict  # (degree, basis index) -> Fraction, no zeros
    lo: int
    hi: int

    def __post_init__(self):
        self.terms = {k: Fraction(v) for k, v in self.terms.items() if v}
        for d, _ in self.terms:
            if not self.lo <= d <= self.hi:
                raise WindowOverflowError("degree %d outside [%d, %d]" % (d, self.lo, self.hi))

    def scaled(self, c) -> "PolyVector":
        c = Fraction(c)
        return PolyVector(self.algebra, {k: c * v for k, v in self.terms.items()}, self.lo, self.hi)

    def plus(self, other: "PolyVector") -> "PolyVector":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            nv = terms.get(k, Fraction(0)) + v
            if nv:
                terms[k] = nv
            else:
                terms.pop(k, None)
        return PolyVector(self.algebra, terms, self.lo, self.hi)

    def shifted(self, by: int) -> "PolyVector":
        return PolyVector(self.algebra, {(d + by, i): v for (d, i), v in self.terms.items()}, self.lo, self.hi)

    def degree_support(self) -> set[int]:
        return {d for d, _ in self.terms}

    def is_zero(self) -> bool:
        return not self.terms


def poly_bracket(p: PolyVector, q: PolyVector) -> PolyVector:
    """[t^i x, t^j y] = t^(i+j) [x, y], within the shared window."""
    if p.algebra is not q.algebra:
        raise ValueError("mismatched underlying algebras")
    if (p.lo, p.hi) != (q.lo, q.hi):
        raise ValueError("mismatched windows")
    g = p.algebra
    out: dict = {}
    for (d1, i), v1 in p.terms.items():
        for (d2, j), v2 in q.terms.items():
            for k, c in g.bracket_basis(i, j):
                key = (d1 + d2, k)
                nv = out.get(key, Fraction(0)) + v1 * v2 * c
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
    for d, _ in out:
        if not p.lo <= d <= p.hi:
            raise WindowOverflowError("bracket degree %d outside [%d, %d]" % (d, p.lo, p.hi))
    return PolyVector(g, out, p.lo, p.hi)


@dataclass
class BorelQuotient:
    epsilon: Fraction
    algebra: LieAlgebra

    @property
    def normal_basis(self) -> list[str]:
        return self.algebra.labels


def _reduce_terms(g: LieAlgebra, eps: Fraction, terms: dict) -> dict:
    """Apply the two reduction rules until every term is in normal form."""
    part = g.meta["part"]
    out: dict = {}

    def bump(key, v):
        nv = out.get(key, Fraction(0)) + v
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)

    for (d, i), v in terms.items():
        if part[i] == "e":
            bump((0, i), v * eps**d)
        elif d == 0:
            if part[i] != "h":
                raise ValueError("degree-0 term outside b")
            bump((0, i), v)
        else:
            bump((1, i), v * eps ** (d - 1))
    return out


def build_borel_quotient(st, eps) -> BorelQuotient:
    """The quotient of b + t*g[t] by (t - eps)*(n + t*g[t]) on normal forms."""
    eps = Fraction(eps)
    g = simple_algebra(st)
    rs = g.meta["root_system"]
    r, npos = rs.rank, len(rs.positive_roots)
    nb = r + npos
    dim = 2 * nb
    pos = rs.positive_roots
    # normal basis: h (deg 0), e (deg 0), t.h, t.f -- same layout as the double
    reps: list[tuple[int, int]] = (
        [(0, i) for i in range(r)]
        + [(0, g.meta["e_index"][root]) for root in pos]
        + [(1, i) for i in range(r)]
        + [(1, g.meta["f_index"][root]) for root in pos]
    )
    index_of = {key: n for n, key in enumerate(reps)}
    labels = (
        ["h(%d)" % (i + 1) for i in range(r)]
        + ["e(%s)" % ",".join(map(str, root)) for root in pos]
        + ["th(%d)" % (i + 1) for i in range(r)]
        + ["tf(%s)" % ",".join(map(str, root)) for root in pos]
    )
    window = (0, 2)
    table: dict = {}
    for a in range(dim):
        pa = PolyVector(g, {reps[a]: Fraction(1)}, *window)
        for b in range(a + 1, dim):
            pb = PolyVector(g, {reps[b]: Fraction(1)}, *window)
            reduced = _reduce_terms(g, eps, poly_bracket(pa, pb).terms)
            terms = {index_of[key]: v for key, v in reduced.items()}
            if terms:
                table[(a, b)] = tuple(sorted(terms.items()))
    algebra = LieAlgebra(
        dim=dim,
        labels=labels,
        table=table,
        subspaces={
            "b": tuple(range(nb)),
            "h": tuple(range(r)),
            "n": tuple(range(r, nb)),
            "t_h": tuple(range(nb, nb + r)),
            "t_n_minus": tuple(range(nb + r, dim)),
        },
        meta={
            "family": "borel_quotient",
            "eps": eps,
            "simple_type": g.meta["simple_type"],
            "simple": g,
            "root_system": rs,
            "rank": r,
            "npos": npos,
            "normal_reps": reps,
        },
    )
    return BorelQuotient(epsilon=eps, algebra=algebra)


def reduce_poly(quotient: BorelQuotient, p: PolyVector) -> list[Fraction]:
    """Normal-form coordinates of an admissible PolyVector in the quotient."""
    g = quotient.algebra.meta["simple"]
    reduced = _reduce_terms(g, quotient.epsilon, p.terms)
    index_of = {key: n for n, key in enumerate(quotient.algebra.meta["normal_reps"])}
    out = [Fraction(0)] * quotient.algebra.dim
    for key, v in reduced.items():
        out[index_of[key]] = v
    return out


def _require(m: AlgebraMap, what: str) -> AlgebraMap:
    from .liealg import check_homomorphism

    if not check_homomorphism(m):
        raise FalsificationError("%s failed bracket compatibility: %r" % (what, m.failure_witness))
    return m


def quotient_comparison(st, eps) -> tuple[AlgebraMap, AlgebraMap]:
    """The mutually inverse pair (gamma, theta) between the eps-fiber of the
    contraction family on b + b- and the Borel quotient at the same eps.

    gamma: x -> x, y -> t.y, (a, b) in h + h -> (a - eps*b) + 2 t.b.
    theta: on Cartan polynomials Q(t)h the pair
    ((Q(eps)+Q(0))/2, (Q(eps)-Q(0))/(2 eps)), read off degree <= 1 normal
    forms; at eps = 0 the second slot degenerates to Q'(0)/2.  Both are
    verified homomorphisms and theta . gamma is the exact identity matrix.
    """
    eps = Fraction(eps)
    fiber = build_contracted_double(st, eps)
    quotient = build_borel_quotient(st, eps)
    tgt = quotient.algebra
    r = fiber.meta["rank"]
    nb = len(fiber.subspaces["b"])
    forward = [[Fraction(0)] * fiber.dim for _ in range(tgt.dim)]
    backward = [[Fraction(0)] * tgt.dim for _ in range(fiber.dim)]
    for j in range(fiber.dim):
        if nb <= j < nb + r:  # second Cartan copy <-> t.h
            forward[j - nb][j] = -eps
            forward[j][j] = Fraction(2)
            # Q = t: ((eps+0)/2, (eps-0)/(2 eps)) = (eps/2, 1/2); same at eps=0
            backward[j - nb][j] = eps / 2
            backward[j][j] = Fraction(1, 2)
        else:  # h, e fixed; f <-> t.f at the same position
            forward[j][j] = Fraction(1)
            backward[j][j] = Fraction(1)
    gamma = _require(AlgebraMap(fiber, tgt, Matrix(forward, cols=fiber.dim)), "quotient comparison")
    if not gamma.verified_bijective:
        raise FalsificationError("quotient comparison map is not bijective")
    theta = _require(AlgebraMap(tgt, fiber, Matrix(backward, cols=tgt.dim)), "quotient retraction")
    if not theta.compose(gamma).is_identity():
        raise FalsificationError("retraction does not invert the comparison map")
    gamma.meta["quotient"] = quotient
    theta.meta["quotient"] = quotient
    return gamma, theta


def gamma_eps(st, eps) -> AlgebraMap:
    return quotient_comparison(st, eps)[0]


def theta_retraction(st, eps) -> AlgebraMap:
    return quotient_comparison(st, eps)[1]


@dataclass
class LoopLift:
    """A diagram automorphism extended over bracket words in a degree window.

    ``elements``/``images`` are parallel lists of homogeneous PolyVectors;
    ``degrees`` records each element's t-degree; ``tracker`` certifies span
    membership over the elements.
    """

    simple: LieAlgebra
    sigma: DiagramAutomorphism
    window: int
    elements: list[PolyVector]
    images: list[PolyVector]
    degrees: list[int]
    tracker: SpanTracker

    @property
    def dim(self) -> int:
        return len(self.elements)

    def apply(self, p: PolyVector) -> PolyVector | None:
        combo = self.tracker.coefficients(p.terms)
        if combo is None:
            return None
        out = PolyVector(self.simple, {}, p.lo, p.hi)
        for idx, c in combo.items():
            out = out.plus(self.images[idx].scaled(c))
        return out


def loop_node_vectors(st, window: int) -> tuple[list[PolyVector], list[PolyVector]]:
    """Raising and lowering generators for every extended-diagram node:
    node 0 carries t*f_theta and t^-1*e_theta, finite nodes their e/f."""
    g = simple_algebra(st)
    rs = g.meta["root_system"]
    lo, hi = -window, window
    theta = rs.highest
    raising = [PolyVector(g, {(1, g.meta["f_index"][theta]): Fraction(1)}, lo, hi)]
    lowering = [PolyVector(g, {(-1, g.meta["e_index"][theta]): Fraction(1)}, lo, hi)]
    for i in range(rs.rank):
        unit = tuple(int(k == i) for k in range(rs.rank))
        raising.append(PolyVector(g, {(0, g.meta["e_index"][unit]): Fraction(1)}, lo, hi))
        lowering.append(PolyVector(g, {(0, g.meta["f_index"][unit]): Fraction(1)}, lo, hi))
    return raising, lowering


def lift_to_loop(st, sigma: DiagramAutomorphism, window: int = 2) -> LoopLift:
    """Extend sigma from generator images over all bracket words whose
    degrees stay within [-window, window].

    Elements live in a window one wider so that images (whose degrees shift
    by at most one) always fit; source brackets are only formed when they
    stay inside [-window, window].
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    g = simple_algebra(st)
    raising, lowering = loop_node_vectors(st, window + 1)
    nodes = len(raising)
    if len(sigma.perm) != nodes:
        raise ValueError("diagram automorphism rank mismatch")
    tracker = SpanTracker()
    elements: list[PolyVector] = []
    images: list[PolyVector] = []
    degrees: list[int] = []
    queue: list[tuple[int, int]] = []

    def degree_of(p: PolyVector) -> int:
        support = p.degree_support()
        if len(support) != 1:
            raise FalsificationError("inhomogeneous element in loop generation")
        return next(iter(support))

    def push(vec: PolyVector, image: PolyVector) -> None:
        kind, payload = tracker.add(vec.terms)
        if kind == "new":
            idx = len(elements)
            elements.append(vec)
            images.append(image)
            degrees.append(degree_of(vec))
            for other in range(idx):
                queue.append((other, idx))
        else:
            expected = PolyVector(g, {}, vec.lo, vec.hi)
            for idx, c in payload.items():
                expected = expected.plus(images[idx].scaled(c))
            if expected.terms != image.terms:
                raise FalsificationError(
                    "inconsistent extension: dependent word image disagrees (%r)" % (sigma.perm,)
                )

    for i in range(nodes):
        push(raising[i], raising[sigma.perm[i]])
        push(lowering[i], lowering[sigma.perm[i]])
    head = 0
    while head < len(queue):
        a, b = queue[head]
        head += 1
        if abs(degrees[a] + degrees[b]) > window:
            continue  # source word would leave the window: not part of the span
        vec = poly_bracket(elements[a], elements[b])
        if vec.is_zero():
            continue
        push(vec, poly_bracket(images[a], images[b]))
    return LoopLift(
        simple=g,
        sigma=sigma,
        window=window,
        elements=elements,
        images=images,
        degrees=degrees,
        tracker=tracker,
    )


def semilinearity_lambda(lift: LoopLift) -> Fraction:
    """The constant lam with lifted(t*v) = lam * t * lifted(v), measured on
    every element whose t-shift stays in the generated span."""
    lam: Fraction | None = None
    tested = 0
    for idx, el in enumerate(lift.elements):
        if lift.degrees[idx] + 1 > lift.window:
            continue
        shifted = el.shifted(1)
        combo = lift.tracker.coefficients(shifted.terms)
        if combo is None:
            continue
        got = PolyVector(lift.simple, {}, el.lo, el.hi)
        for k, c in combo.items():
            got = got.plus(lift.images[k].scaled(c))
        expected = lift.images[idx].shifted(1)
        if expected.is_zero():
            if not got.is_zero():
                raise FalsificationError("semilinearity broken: zero expectation, nonzero image")
            continue
        key = next(iter(expected.terms))
        if key not in got.terms:
            raise FalsificationError("semilinearity broken: support mismatch")
        ratio = got.terms[key] / expected.terms[key]
        if got.terms != {k: ratio * v for k, v in expected.terms.items()}:
            raise FalsificationError("semilinearity broken: image is not proportional to shift")
        if lam is None:
            lam = ratio
        elif lam != ratio:
            raise FalsificationError("semilinearity constant differs between elements: %s vs %s" % (lam, ratio))
        tested += 1
    if lam is None or tested == 0:
        raise FalsificationError("no testable elements for the semilinearity constant")
    if lam not in (Fraction(1), Fraction(-1)):
        raise FalsificationError("semilinearity constant %s outside {1, -1}" % lam)
    if lift.sigma.order() % 2 == 1 and lam != 1:
        raise FalsificationError("odd-order automorphism with semilinearity constant -1")
    return lam


def loop_cartan_involution(p: PolyVector) -> PolyVector:
    """omega(t^i x) = t^-i omega0(x) with omega0 the Chevalley involution."""
    g = p.algebra
    part = g.meta["part"]
    root_of = g.meta["root_of"]
    e_index, f_index = g.meta["e_index"], g.meta["f_index"]
    terms: dict = {}
    for (d, i), v in p.terms.items():
        if part[i] == "h":
            j = i
        elif part[i] == "e":
            j = f_index[root_of[i]]
        else:
            j = e_index[tuple(-c for c in root_of[i])]
        key = (-d, j)
        nv = terms.get(key, Fraction(0)) - v
        if nv:
            terms[key] = nv
        else:
            terms.pop(key, None)
    return PolyVector(g, terms, p.lo, p.hi)


def omega_compatibility_check(lift: LoopLift) -> int:
    """Verify omega . lifted . omega = lifted wherever both sides are
    defined; returns the number of elements actually compared."""
    compared = 0
    for idx, el in enumerate(lift.elements):
        conj = loop_cartan_involution(el)
        image = lift.apply(conj)
        if image is None:
            continue
        lhs = loop_cartan_involution(image)
        if lhs.terms != lift.images[idx].terms:
            raise FalsificationError("omega-conjugation changed the lifted map")
        compared += 1
    if compared == 0:
        raise FalsificationError("omega-compatibility had nothing to compare")
    return compared
