"""Root-system combinatorics for the simple types.

Roots live in simple-root integer coordinates.  The Cartan convention is
``cartan[i][j] = <alpha_j, alpha_i^vee>`` (rows indexed by the coroot), which
matches the root-string formula ``a_ij = -max{n : alpha_j + n*alpha_i is a
root}`` for distinct nodes — ``extended_cartan_via_strings`` recomputes the
extended matrix that way as an independent cross-check.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

_RANK_BOUNDS = {"A": (1, None), "B": (2, None), "C": (2, None), "D": (3, None), "E": (6, 8), "F": (4, 4), "G": (2, 2)}


@dataclass(frozen=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        lo_hi = _RANK_BOUNDS.get(self.family)
        if lo_hi is None:
            raise ValueError("unknown family %r" % (self.family,))
        lo, hi = lo_hi
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise ValueError("rank %d out of range for family %s" % (self.rank, self.family))

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        m = re.fullmatch(r"([A-Ga-g])\s*(\d+)", text.strip())
        if not m:
            raise ValueError("cannot parse simple type from %r" % (text,))
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return "%s%d" % (self.family, self.rank)


def cartan_matrix(st: SimpleType) -> list[list[int]]:
    """Standard Cartan matrix (Bourbaki numbering)."""
    n = st.rank
    a = [[2 * int(i == j) for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    fam = st.family
    if fam in ("A", "B", "C", "F", "G"):
        for i in range(n - 1):
            bond(i, i + 1)
    if fam == "B":
        bond(n - 2, n - 1, -1, -2)
    elif fam == "C":
        bond(n - 2, n - 1, -2, -1)
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif fam == "E":
        # chain 1-3-4-5-...-n with node 2 attached to node 4
        chain = [0] + list(range(2, n))
        for x, y in zip(chain, chain[1:]):
            bond(x, y)
        bond(1, 3)
    elif fam == "F":
        bond(1, 2, -1, -2)
    elif fam == "G":
        bond(0, 1, -3, -1)
    return a


def _symmetrizer(cartan: list[list[int]]) -> list[int]:
    """Positive integers d with d_i a_ij = d_j a_ji, normalized to min 1."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if i != j and cartan[i][j] and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    assert all(v is not None for v in d), "Dynkin diagram not connected"
    lo = min(d)  # type: ignore[type-var]
    vals = [v / lo for v in d]  # type: ignore[operator]
    assert all(v.denominator == 1 for v in vals)
    return [int(v) for v in vals]


@dataclass
class RootSystem:
    simple_type: SimpleType
    cartan: list[list[int]]
    positive_roots: list[tuple[int, ...]]
    lowest: tuple[int, ...]
    extended_cartan: list[list[int]]
    marks: tuple[int, ...]
    symmetrizer: list[int]
    root_set: frozenset = field(repr=False)

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    @property
    def highest(self) -> tuple[int, ...]:
        return tuple(-c for c in self.lowest)

    def pairing(self, beta, i: int) -> int:
        """<beta, alpha_i^vee> = beta(h_i)."""
        return sum(beta[j] * self.cartan[i][j] for j in range(self.rank))

    def bilinear(self, x, y) -> Fraction:
        """Symmetrized invariant form, normalized so short roots have length 2."""
        n = self.rank
        return Fraction(
            sum(x[i] * y[j] * self.symmetrizer[i] * self.cartan[i][j] for i in range(n) for j in range(n))
        )

    def is_root(self, coords) -> bool:
        return tuple(coords) in self.root_set

    def height(self, coords) -> int:
        return sum(coords)

    def node_roots(self) -> list[tuple[int, ...]]:
        """Extended-diagram node root vectors: node 0 is the lowest root."""
        n = self.rank
        return [self.lowest] + [tuple(int(i == j) for j in range(n)) for i in range(n)]


def generate_roots(st: SimpleType) -> RootSystem:
    """Enumerate the positive roots by closing simple roots under root strings."""
    cartan = cartan_matrix(st)
    n = st.rank
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    pos: set = set(simples)
    level = list(simples)
    while level:
        nxt = []
        for beta in level:
            for i in range(n):
                # p = longest consecutive descent beta - k*alpha_i inside Phi+
                p = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in pos:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                if p - pairing >= 1:
                    up = list(beta)
                    up[i] += 1
                    t = tuple(up)
                    if t not in pos:
                        pos.add(t)
                        nxt.append(t)
        level = nxt
    ordered = sorted(pos, key=lambda r: (sum(r), r))
    top = ordered[-1]
    assert len(ordered) == 1 or sum(ordered[-2]) < sum(top), "highest root is not unique"
    lowest = tuple(-c for c in top)
    root_set = frozenset(pos) | frozenset(tuple(-c for c in r) for r in pos)
    rs = RootSystem(
        simple_type=st,
        cartan=cartan,
        positive_roots=ordered,
        lowest=lowest,
        extended_cartan=[],
        marks=(),
        symmetrizer=_symmetrizer(cartan),
        root_set=root_set,
    )
    ext, marks = extended_cartan_and_marks(rs)
    rs.extended_cartan = ext
    rs.marks = marks
    return rs


def lowest_root(rs: RootSystem) -> tuple[int, ...]:
    """The unique minimal root = -(highest root); all coordinates <= 0."""
    assert all(c <= 0 for c in rs.lowest)
    return rs.lowest


def extended_cartan_and_marks(rs: RootSystem) -> tuple[list[list[int]], tuple[int, ...]]:
    """Extended Cartan matrix over nodes {alpha_0} + simples, and the marks.

    Entries come from the invariant pairing 2(b, a)/(a, a); the marks are the
    coefficients of the unique positive relation among the node roots,
    normalized so node 0 carries mark 1.
    """
    nodes = rs.node_roots()
    m = len(nodes)
    ext = []
    for a in range(m):
        row = []
        norm = rs.bilinear(nodes[a], nodes[a])
        for b in range(m):
            val = 2 * rs.bilinear(nodes[b], nodes[a]) / norm
            assert val.denominator == 1
            row.append(int(val))
        ext.append(row)
    marks = (1,) + rs.highest
    assert all(sum(ext[a][b] * marks[b] for b in range(m)) == 0 for a in range(m))
    return ext, marks


def affine_root_member(rs: RootSystem, degree: int, coords) -> bool:
    """Membership in the affine root set: real (coords a root, any degree)
    or imaginary (coords zero, nonzero degree)."""
    coords = tuple(coords)
    if rs.is_root(coords):
        return True
    return all(c == 0 for c in coords) and degree != 0


def extended_cartan_via_strings(rs: RootSystem) -> list[list[int]]:
    """Recompute the extended Cartan matrix from affine root strings.

    For distinct nodes a != b the entry is -max{n : b + n*a in the affine
    root set}, where node 0 sits at degree 1 over the lowest root.
    """
    nodes = rs.node_roots()
    degs = [1] + [0] * rs.rank
    m = len(nodes)
    out = [[2 * int(i == j) for j in range(m)] for i in range(m)]
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            top = 0
            for n in range(1, 7):
                cand_deg = degs[b] + n * degs[a]
                cand = tuple(nodes[b][k] + n * nodes[a][k] for k in range(rs.rank))
                if affine_root_member(rs, cand_deg, cand):
                    top = n
            out[a][b] = -top
    return out
