"""Matroids from bases: rank, flats, loops, polytopes, sums and census parsing.

Bases are stored as bit masks over the ground set [n].  The rank of a set A
is the maximum intersection size with a basis; flats are the closed sets of
the induced closure operator.  Matroid polytopes are the convex hulls of
the characteristic vectors of the bases; by the exchange characterization,
their edges are parallel to differences of two unit vectors, which is also
the certificate used to test whether a subdivision is matroidal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .closure import ClosureSystem, GroundSet
from .exactgeom import PointConfig, hull, _rank
from .subdivision import Subdivision

EXCHANGE_CHECK_LIMIT = 10  # constructor verifies exchange up to this ground size


class MatroidError(ValueError):
    pass


def _mask(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class Matroid:
    """Matroid on [n] given by its bases (bit masks of cardinality r)."""

    n: int
    r: int
    bases: frozenset[int]

    def __post_init__(self):
        if not self.bases:
            raise MatroidError("a matroid needs at least one basis")
        for b in self.bases:
            if b.bit_count() != self.r:
                raise MatroidError("all bases must have the same cardinality")
            if b >> self.n:
                raise MatroidError("basis element outside the ground set")

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_bases(n: int, bases, validate: bool | None = None) -> "Matroid":
        masks = frozenset(b if isinstance(b, int) else _mask(b) for b in bases)
        if not masks:
            raise MatroidError("a matroid needs at least one basis")
        r = next(iter(masks)).bit_count()
        m = Matroid(n=n, r=r, bases=masks)
        if validate is None:
            validate = n <= EXCHANGE_CHECK_LIMIT
        if validate and not m.satisfies_exchange():
            raise MatroidError("basis family violates the exchange axiom")
        return m

    @staticmethod
    def uniform(r: int, n: int) -> "Matroid":
        if not 1 <= r <= n:
            raise MatroidError("uniform matroid needs 1 <= r <= n")
        return Matroid(
            n=n, r=r, bases=frozenset(_mask(c) for c in combinations(range(n), r))
        )

    @staticmethod
    def from_json(text: str) -> "Matroid":
        data = json.loads(text)
        return Matroid.from_bases(int(data["n"]), [list(b) for b in data["bases"]])

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "r": self.r,
                "bases": sorted(
                    [i for i in range(self.n) if b >> i & 1] for b in self.bases
                ),
            },
            sort_keys=True,
        )

    # -- axioms -----------------------------------------------------------

    def satisfies_exchange(self) -> bool:
        """Basis exchange: for B, B' and b in B - B' there is b' in B' - B
        with B - b + b' a basis."""
        for b1 in self.bases:
            for b2 in self.bases:
                out = b1 & ~b2
                inn = b2 & ~b1
                for i in range(self.n):
                    if not out >> i & 1:
                        continue
                    stripped = b1 & ~(1 << i)
                    if not any(
                        stripped | (1 << j) in self.bases
                        for j in range(self.n)
                        if inn >> j & 1
                    ):
                        return False
        return True

    def validate_polytope(self) -> bool:
        """Edge-direction criterion on the matroid polytope: every edge must
        be parallel to a difference of two unit vectors."""
        sub = _trivial_subdivision(self.polytope())
        return is_matroidal(sub)

    # -- rank and flats ----------------------------------------------------

    def rank(self, subset: int) -> int:
        return max((subset & b).bit_count() for b in self.bases)

    def closure_system(self) -> ClosureSystem:
        ground = GroundSet(self.n)

        def close(a: int) -> int:
            ra = self.rank(a)
            out = a
            for x in range(self.n):
                if not a >> x & 1 and self.rank(a | (1 << x)) == ra:
                    out |= 1 << x
            return out

        return ClosureSystem(ground, close)

    def loops(self) -> int:
        used = 0
        for b in self.bases:
            used |= b
        return ((1 << self.n) - 1) & ~used

    def is_loopfree(self) -> bool:
        return self.loops() == 0

    # -- geometry ------------------------------------------------------------

    def polytope(self) -> PointConfig:
        """Convex hull of the characteristic vectors of the bases, with the
        points listed in lexicographic basis order."""
        rows = []
        for b in sorted_bases(self):
            rows.append(tuple(Fraction(1) if b >> i & 1 else Fraction(0) for i in range(self.n)))
        return PointConfig(dim=self.n, points=tuple(rows))

    # -- sums and connectivity ---------------------------------------------

    def direct_sum(self, other: "Matroid") -> "Matroid":
        bases = frozenset(
            b1 | (b2 << self.n) for b1 in self.bases for b2 in other.bases
        )
        return Matroid(n=self.n + other.n, r=self.r + other.r, bases=bases)

    def connected_components(self) -> list[int]:
        """Finest partition of the ground set into separators, as masks.

        A set A is a union of components iff rank(A) + rank(complement)
        equals the rank; the component of an element is the intersection of
        all separators containing it.
        """
        full = (1 << self.n) - 1
        separators = [
            a
            for a in range(1, full)
            if self.rank(a) + self.rank(full & ~a) == self.r
        ]
        components = []
        assigned = 0
        for i in range(self.n):
            if assigned >> i & 1:
                continue
            comp = full
            for s in separators:
                if s >> i & 1:
                    comp &= s
            components.append(comp)
            assigned |= comp
        return components


def sorted_bases(m: Matroid) -> list[int]:
    """Bases in lexicographic order of their sorted index tuples."""
    def key(b):
        return tuple(i for i in range(m.n) if b >> i & 1)

    return sorted(m.bases, key=key)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    return m1.direct_sum(m2)


@dataclass(frozen=True)
class Valuation:
    """Rational value per basis of an owner matroid."""

    owner: Matroid
    values: dict

    def __post_init__(self):
        if set(self.values) != set(self.owner.bases):
            raise MatroidError("valuation must assign a value to every basis")

    def value(self, basis_mask: int) -> Fraction:
        return self.values[basis_mask]

    def heights(self) -> tuple[Fraction, ...]:
        """Values aligned to the polytope's point order."""
        return tuple(self.values[b] for b in sorted_bases(self.owner))

    @staticmethod
    def zero(owner: Matroid) -> "Valuation":
        return Valuation(owner=owner, values={b: Fraction(0) for b in owner.bases})

    @staticmethod
    def from_json(owner: Matroid, text: str) -> "Valuation":
        data = json.loads(text)
        values = {}
        for key, val in data["values"].items():
            idx = [int(t) for t in key.split(",")]
            values[_mask(idx)] = Fraction(str(val))
        return Valuation(owner=owner, values=values)

    def to_json(self) -> str:
        out = {}
        for b, v in self.values.items():
            key = ",".join(str(i) for i in range(self.owner.n) if b >> i & 1)
            out[key] = str(v)
        return json.dumps(
            {"n": self.owner.n, "r": self.owner.r, "values": out}, sort_keys=True
        )


def corank_valuation(m: Matroid) -> Valuation:
    """Valuation on the uniform matroid of the same rank and ground set,
    assigning each basis its corank r - rank_m(B)."""
    uni = Matroid.uniform(m.r, m.n)
    values = {b: Fraction(m.r - m.rank(b)) for b in uni.bases}
    return Valuation(owner=uni, values=values)


# ---------------------------------------------------------------------------
# matroidality of subdivisions
# ---------------------------------------------------------------------------

def _trivial_subdivision(config: PointConfig) -> Subdivision:
    from .subdivision import HeightFunction, regular_subdivision

    zero = HeightFunction(values=tuple(Fraction(0) for _ in config.points))
    return regular_subdivision(config, zero)


def _cell_edges(config: PointConfig, cell_mask: int):
    """Edges of conv(cell points) as pairs of point indices (into config)."""
    idx = [i for i in range(len(config.points)) if cell_mask >> i & 1]
    sub_config = PointConfig(
        dim=config.dim, points=tuple(config.points[i] for i in idx)
    )
    hrep, inc, flags = hull(sub_config)
    k = hrep.dim
    verts = [j for j in range(len(idx)) if flags[j]]
    edges = []
    for a, b in combinations(verts, 2):
        face = (1 << len(idx)) - 1
        for f, row in zip(hrep.facets, inc.rows):
            if row >> a & 1 and row >> b & 1:
                face &= row
        on_face = [j for j in range(len(idx)) if face >> j & 1]
        diffs = [
            [x - y for x, y in zip(sub_config.points[j], sub_config.points[on_face[0]])]
            for j in on_face[1:]
        ]
        if k >= 1 and _rank(diffs) == 1:
            edges.append((idx[a], idx[b]))
    return edges


def non_matroidal_witness(sub: Subdivision):
    """Return (cell mask, edge direction) for an edge not parallel to any
    e_i - e_j, or None when every cell passes the edge test."""
    config = sub.config
    for cell in sub.maximal_cells:
        for a, b in _cell_edges(config, cell):
            direction = [x - y for x, y in zip(config.points[b], config.points[a])]
            nonzero = sorted(x for x in direction if x != 0)
            if len(nonzero) != 2 or nonzero[0] != -nonzero[1]:
                return cell, tuple(direction)
    return None


def is_matroidal(sub: Subdivision) -> bool:
    """True iff every edge of every maximal cell is parallel to some
    e_i - e_j; for 0/1 configurations with constant coordinate sum this
    certifies that every cell is a matroid polytope."""
    return non_matroidal_witness(sub) is None


def matroid_from_points(n: int, cell_mask: int, points) -> Matroid:
    """Matroid whose bases are the supports of the 0/1 points in a cell."""
    bases = []
    for i, p in enumerate(points):
        if cell_mask >> i & 1:
            bases.append(_mask(j for j in range(n) if p[j] == 1))
    return Matroid.from_bases(n, bases, validate=False)


# ---------------------------------------------------------------------------
# census files
# ---------------------------------------------------------------------------

def census_order(n: int, r: int, order: str = "lex") -> list[tuple[int, ...]]:
    subsets = list(combinations(range(n), r))
    if order == "lex":
        return subsets
    if order == "revlex":
        return subsets[::-1]
    raise MatroidError(f"unknown census ordering {order!r}")


def parse_census_line(line: str, n: int, r: int, order: str = "lex") -> Matroid:
    """Decode one census bitstring (characters 0/1/*, '*' counts as 1) into a
    matroid; the exchange axiom is always verified."""
    line = line.strip()
    subsets = census_order(n, r, order)
    if len(line) != len(subsets):
        raise MatroidError(
            f"census line has {len(line)} characters, expected {len(subsets)}"
        )
    bases = []
    for ch, subset in zip(line, subsets):
        if ch in "1*":
            bases.append(_mask(subset))
        elif ch != "0":
            raise MatroidError(f"invalid census character {ch!r}")
    if not bases:
        raise MatroidError("census line encodes no bases")
    m = Matroid(n=n, r=r, bases=frozenset(bases))
    if not m.satisfies_exchange():
        raise MatroidError("census line violates the exchange axiom")
    return m


def format_census_line(m: Matroid, order: str = "lex") -> str:
    subsets = census_order(m.n, m.r, order)
    return "".join("1" if _mask(s) in m.bases else "0" for s in subsets)
