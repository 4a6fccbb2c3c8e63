"""Exact rational linear algebra, convex hulls and polytope/fan closure operators.

Everything here is exact: coordinates are ``fractions.Fraction``, facet
normals and ray directions are primitive integer vectors.  There is no
floating point anywhere, because all downstream decisions (incidences,
lower-facet tests, subdivision cells) are equality tests.

The hull algorithm is an incremental double description run on the
homogenized point configuration: points are scaled to integers, projected
to a full-dimensional coordinate subspace of their affine hull, homogenized
to cone generators, and inserted one at a time while maintaining the
extreme rays of the polar cone (= the facet normals).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .closure import ClosureSystem, GroundSet

Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]


# ---------------------------------------------------------------------------
# small exact linear algebra helpers
# ---------------------------------------------------------------------------

def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns nonzero rows and pivot columns."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pr = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [x / pv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _rank(rows) -> int:
    return len(_rref([[Fraction(x) for x in r] for r in rows])[0])


def _primitive(vec) -> IntVector:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fracs = [Fraction(x) for x in vec]
    mult = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * mult) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _nullspace(rows: list, ncols: int) -> list[IntVector]:
    """Primitive integer basis of the right null space, in canonical form."""
    rr, pivots = _rref([[Fraction(x) for x in r] for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rr[i][f]
        basis.append(_primitive(v))
    return basis


def solve_unique(rows: list, rhs: list) -> Vector:
    """Solve a linear system with a unique solution, exactly."""
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    rr, pivots = _rref(aug)
    for r in rr:
        if all(x == 0 for x in r[:-1]) and r[-1] != 0:
            raise ValueError("inconsistent linear system")
    if [p for p in pivots if p < ncols] != list(range(ncols)):
        raise ValueError("linear system is underdetermined")
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        if p < ncols:
            x[p] = rr[i][-1]
    return tuple(x)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def orthogonalize(vecs) -> list[Vector]:
    """Exact Gram-Schmidt; drops dependent vectors."""
    out: list[Vector] = []
    for v in vecs:
        w = [Fraction(x) for x in v]
        for u in out:
            c = _dot(w, u) / _dot(u, u)
            w = [a - c * b for a, b in zip(w, u)]
        if any(w):
            out.append(tuple(w))
    return out


def project_off(vec, ortho_basis) -> Vector:
    """Component of ``vec`` orthogonal to the span of an orthogonal basis."""
    w = [Fraction(x) for x in vec]
    for u in ortho_basis:
        c = _dot(w, u) / _dot(u, u)
        w = [a - c * b for a, b in zip(w, u)]
    return tuple(w)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointConfig:
    """Finite configuration of pairwise distinct rational points."""

    dim: int
    points: tuple[Vector, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("point configuration must be nonempty")
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError("point has wrong dimension")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")

    @staticmethod
    def from_rows(rows) -> "PointConfig":
        pts = tuple(tuple(Fraction(x) for x in row) for row in rows)
        return PointConfig(dim=len(pts[0]), points=pts)

    @staticmethod
    def from_json(text: str) -> "PointConfig":
        data = json.loads(text)
        pts = tuple(
            tuple(Fraction(str(x)) for x in row) for row in data["points"]
        )
        return PointConfig(dim=int(data["dim"]), points=pts)

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dim,
                "points": [[str(x) for x in p] for p in self.points],
            },
            sort_keys=True,
        )


@dataclass(frozen=True)
class Facet:
    """Supporting halfspace normal.x >= -offset (normal points inward).

    With offset zero on both sides, equations are stored the same way and
    read normal.x + offset = 0.
    """

    normal: IntVector
    offset: Fraction

    def value_at(self, point) -> Fraction:
        return _dot(self.normal, point) + self.offset


@dataclass(frozen=True)
class HRep:
    """Exact facet/equation description of a convex hull."""

    facets: tuple[Facet, ...]
    equations: tuple[Facet, ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    def verify(self, config: PointConfig) -> bool:
        """Pointwise check: every point satisfies every facet and equation,
        and every facet is supported by an affinely spanning point subset."""
        for eq in self.equations:
            if any(eq.value_at(p) != 0 for p in config.points):
                return False
        for fa in self.facets:
            vals = [fa.value_at(p) for p in config.points]
            if any(v < 0 for v in vals):
                return False
            onset = [p for p, v in zip(config.points, vals) if v == 0]
            if not onset:
                return False
            diffs = [
                [a - b for a, b in zip(p, onset[0])] for p in onset[1:]
            ]
            if _rank(diffs) != self.dim - 1:
                return False
        return True

    def to_json(self) -> str:
        return json.dumps(
            {
                "facets": [
                    {"normal": list(f.normal), "offset": str(f.offset)}
                    for f in self.facets
                ],
                "equations": [
                    {"normal": list(f.normal), "offset": str(f.offset)}
                    for f in self.equations
                ],
            },
            sort_keys=True,
        )


@dataclass(frozen=True)
class IncidenceMatrix:
    """Facet-point incidences. Row r is a bit mask over points: bit c set
    iff point c satisfies facet r with equality."""

    rows: tuple[int, ...]
    n_points: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "rows": [
                    [c for c in range(self.n_points) if r >> c & 1]
                    for r in self.rows
                ]
            },
            sort_keys=True,
        )

    def restricted_to(self, keep_flags) -> "IncidenceMatrix":
        """Drop columns whose flag is false (e.g. restrict to hull vertices)."""
        kept = [c for c in range(self.n_points) if keep_flags[c]]
        rows = []
        for r in self.rows:
            m = 0
            for new_c, old_c in enumerate(kept):
                if r >> old_c & 1:
                    m |= 1 << new_c
            rows.append(m)
        return IncidenceMatrix(rows=tuple(rows), n_points=len(kept))


# ---------------------------------------------------------------------------
# double description core
# ---------------------------------------------------------------------------

def _dd_polar_rays(gens: list[IntVector]) -> list[tuple[IntVector, int]]:
    """Extreme rays of the polar of a full-dimensional pointed cone.

    ``gens`` must linearly span the space and admit a strictly positive
    functional (both hold for homogenized point configurations).  Returns
    (ray, zeroset) pairs where the zeroset is a bit mask over ``gens``
    marking the generators the ray vanishes on; these are exactly the
    facet normals of cone(gens) with their generator incidences.
    """
    m = len(gens[0])
    # greedy scan for m linearly independent generators to seed a simplicial cone
    seed: list[int] = []
    basis_rows: list[list[Fraction]] = []
    for idx, g in enumerate(gens):
        trial = basis_rows + [[Fraction(x) for x in g]]
        if len(_rref(trial)[0]) > len(basis_rows):
            basis_rows = _rref(trial)[0]
            seed.append(idx)
            if len(seed) == m:
                break
    if len(seed) < m:
        raise ValueError("generators do not span the space")

    # invert the seed matrix: row j of the inverse pairs to delta_{ij} with g_i
    aug = [
        [Fraction(gens[seed[i]][j]) for i in range(m)]
        + [Fraction(1 if j == t else 0) for t in range(m)]
        for j in range(m)
    ]
    rr, pivots = _rref(aug)
    if pivots != list(range(m)):
        raise ValueError("seed matrix is singular")
    inv_rows = [[rr[t][m + j] for j in range(m)] for t in range(m)]

    rays: list[tuple[IntVector, int]] = []
    for t in range(m):
        ray = _primitive(inv_rows[t])
        z = 0
        for i in seed:
            if i != seed[t]:
                z |= 1 << i
        rays.append((ray, z))

    pending = [i for i in range(len(gens)) if i not in seed]
    for t in pending:
        v = gens[t]
        vals = [_dot(r, v) for r, _ in rays]
        if all(val >= 0 for val in vals):
            rays = [
                (r, z | (1 << t) if val == 0 else z)
                for (r, z), val in zip(rays, vals)
            ]
            continue
        pos = [(r, z, val) for (r, z), val in zip(rays, vals) if val > 0]
        zero = [(r, z | (1 << t)) for (r, z), val in zip(rays, vals) if val == 0]
        neg = [(r, z, val) for (r, z), val in zip(rays, vals) if val < 0]
        all_zs = [z for _, z in rays]
        new: dict[IntVector, int] = {}
        for rn, zn, valn in neg:
            for rp, zp, valp in pos:
                common = zp & zn
                if common.bit_count() < m - 2:
                    continue
                adjacent = True
                for z3 in all_zs:
                    if z3 == zp or z3 == zn:
                        continue
                    if common & z3 == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                a, b = valp, -valn  # both positive
                w = _primitive([a * x + b * y for x, y in zip(rn, rp)])
                new.setdefault(w, common | (1 << t))
        rays = [(r, z) for r, z, _ in pos] + zero + list(new.items())
    return rays


def hull(config: PointConfig) -> tuple[HRep, IncidenceMatrix, tuple[bool, ...]]:
    """Exact facet description of conv(config), with incidences and vertex flags.

    Returns equations cutting out the affine hull when the configuration is
    not full-dimensional; a single point yields equations only.
    """
    d = config.dim
    npts = len(config.points)
    scale = lcm(*(x.denominator for p in config.points for x in p))
    ipts = [tuple(int(x * scale) for x in p) for p in config.points]

    diffs = [[a - b for a, b in zip(p, ipts[0])] for p in ipts[1:]]
    rr, pivots = _rref([[Fraction(x) for x in r] for r in diffs])
    k = len(pivots)
    equations = []
    for nvec in _nullspace(diffs, d):
        off = Fraction(-_dot(nvec, ipts[0]), scale)
        equations.append(Facet(normal=nvec, offset=off))

    if k == 0:
        return (
            HRep(facets=(), equations=tuple(equations), ambient_dim=d),
            IncidenceMatrix(rows=(), n_points=npts),
            (True,) * npts,
        )

    proj = [tuple(p[c] for c in pivots) for p in ipts]
    order = sorted(range(npts), key=lambda i: proj[i])
    gens = [(1,) + proj[i] for i in order]
    polar = _dd_polar_rays(gens)

    m = k + 1
    entries = []
    for ray, zset in polar:
        normal = [0] * d
        for val, c in zip(ray[1:], pivots):
            normal[c] = val
        inc = 0
        for pos in range(npts):
            if zset >> pos & 1:
                inc |= 1 << order[pos]
        entries.append((tuple(normal), Fraction(ray[0], scale), inc, ray))
    entries.sort(key=lambda e: (e[0], e[1]))

    facets = tuple(Facet(normal=n, offset=o) for n, o, _, _ in entries)
    inc_rows = tuple(e[2] for e in entries)

    flags = []
    for i in range(npts):
        active = [e[3] for e in entries if e[2] >> i & 1]
        flags.append(_rank(active) == k)

    return (
        HRep(facets=facets, equations=tuple(equations), ambient_dim=d),
        IncidenceMatrix(rows=inc_rows, n_points=npts),
        tuple(flags),
    )


def cone_hrep(generators, lines=()) -> list[tuple[IntVector, int]]:
    """Facets of cone(generators) + span(lines), as (normal, generator mask).

    Computed via the hull of {0} union the generators union +-lines: the
    hull facets passing through the origin are exactly the cone facets.
    """
    pts: list[IntVector] = []
    seen = {}
    gen_pos = []
    d = len(generators[0])
    zero = tuple([0] * d)
    pts.append(zero)
    seen[zero] = 0
    for g in generators:
        g = tuple(g)
        if g not in seen:
            seen[g] = len(pts)
            pts.append(g)
        gen_pos.append(seen[g])
    for l in lines:
        for s in (1, -1):
            v = tuple(s * x for x in l)
            if v not in seen:
                seen[v] = len(pts)
                pts.append(v)
    config = PointConfig.from_rows(pts)
    hrep, inc, _ = hull(config)
    out = []
    for facet, row in zip(hrep.facets, inc.rows):
        if facet.offset != 0:
            continue
        mask = 0
        for j, pos in enumerate(gen_pos):
            if row >> pos & 1:
                mask |= 1 << j
        out.append((facet.normal, mask))
    return out


# ---------------------------------------------------------------------------
# face-lattice closure operators
# ---------------------------------------------------------------------------

def polytope_closure_vertex(inc: IncidenceMatrix) -> ClosureSystem:
    """Ground set = vertices; close(A) = vertex set of the smallest face
    containing A.  The incidence matrix must be over the vertex set."""
    nv = inc.n_points
    ground = GroundSet(nv, labels=tuple(f"v{i}" for i in range(nv)))
    full = ground.full_mask
    rows = inc.rows

    def close(a: int) -> int:
        if a == 0:
            return 0
        c = full
        for r in rows:
            if a & r == a:
                c &= r
        return c

    return ClosureSystem(ground, close)


def polytope_closure_facet(inc: IncidenceMatrix) -> ClosureSystem:
    """Ground set = facets; close(F) = all facets containing the face cut
    out by F.  Yields the face lattice with inverted relations; the empty
    face (empty intersection) closes to the full facet set."""
    nf = len(inc.rows)
    if nf == 0:
        raise ValueError("facet closure needs at least one facet")
    ground = GroundSet(nf, labels=tuple(f"f{i}" for i in range(nf)))
    rows = inc.rows
    all_pts = (1 << inc.n_points) - 1

    def close(f: int) -> int:
        if f == 0:
            return 0
        q = all_pts
        for j in range(nf):
            if f >> j & 1:
                q &= rows[j]
        out = 0
        for j, r in enumerate(rows):
            if q & ~r == 0:
                out |= 1 << j
        return out

    return ClosureSystem(ground, close)


# ---------------------------------------------------------------------------
# polyhedral fans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fan:
    """Rays (primitive integer directions), maximal cones as ray-index sets,
    and an explicit basis of the lineality space."""

    rays: tuple[IntVector, ...]
    maximal_cones: tuple[tuple[int, ...], ...]
    lineality: tuple[IntVector, ...] = ()

    def __post_init__(self):
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("fan rays must be distinct")
        for r in self.rays:
            if r != _primitive(r):
                raise ValueError(f"ray {r} is not primitive")
        masks = [sum(1 << i for i in c) for c in self.maximal_cones]
        for i, a in enumerate(masks):
            for j, b in enumerate(masks):
                if i != j and a & b == a:
                    raise ValueError("maximal cones must not contain one another")

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @staticmethod
    def from_json(text: str) -> "Fan":
        data = json.loads(text)
        return Fan(
            rays=tuple(tuple(int(x) for x in r) for r in data["rays"]),
            maximal_cones=tuple(tuple(int(i) for i in c) for c in data["cones"]),
            lineality=tuple(
                tuple(int(x) for x in l) for l in data.get("lineality", [])
            ),
        )


def fan_closure(fan: Fan) -> ClosureSystem:
    """Closure operator on the rays of a fan plus one artificial top element.

    close(F) is the ray set of the smallest cone of the fan containing all
    rays of F, or the full ground set (including the artificial element)
    when no cone contains F.
    """
    nr = len(fan.rays)
    ground = GroundSet(
        nr + 1, labels=tuple(f"r{i}" for i in range(nr)) + ("inf",)
    )
    full = ground.full_mask
    inf_bit = 1 << nr

    cones = []
    for cone in fan.maximal_cones:
        if not cone:
            cones.append((0, []))
            continue
        cone_mask = sum(1 << i for i in cone)
        gens = [fan.rays[i] for i in cone]
        facets = cone_hrep(gens, lines=fan.lineality)
        # remap facet incidence masks from local generator order to ray indices
        rows = []
        for _, local in facets:
            m = 0
            for j, ray_idx in enumerate(cone):
                if local >> j & 1:
                    m |= 1 << ray_idx
            rows.append(m)
        # every listed ray must be extreme: the smallest face containing it
        # (rays on all facets through it) must be the ray alone
        for i in cone:
            face = cone_mask
            for row in rows:
                if row >> i & 1:
                    face &= row
            if face != 1 << i:
                raise ValueError(
                    f"ray {i} is not extreme in cone {cone}; "
                    "rays must be positively independent modulo lineality"
                )
        cones.append((cone_mask, rows))

    def close(f: int) -> int:
        if f == 0:
            return 0
        if f & inf_bit:
            return full
        result = None
        for cone_mask, rows in cones:
            if f & ~cone_mask:
                continue
            face = cone_mask
            for r in rows:
                if f & r == f:
                    face &= r
            result = face if result is None else result & face
        return full if result is None else result

    return ClosureSystem(ground, close)


def normal_fan(config: PointConfig) -> Fan:
    """Normal fan of conv(config): rays are outward facet normals projected
    orthogonally to the lineality (= affine hull normals), maximal cones are
    the vertex normal cones."""
    hrep, inc, flags = hull(config)
    lin = tuple(_primitive(e.normal) for e in hrep.equations)
    ortho = orthogonalize(lin)
    ray_index: dict[IntVector, int] = {}
    rays: list[IntVector] = []
    facet_ray: list[int] = []
    for f in hrep.facets:
        outward = _primitive(project_off([-x for x in f.normal], ortho))
        if outward not in ray_index:
            ray_index[outward] = len(rays)
            rays.append(outward)
        facet_ray.append(ray_index[outward])
    cones = []
    for i, is_vertex in enumerate(flags):
        if not is_vertex:
            continue
        cone = tuple(
            sorted({facet_ray[j] for j, r in enumerate(inc.rows) if r >> i & 1})
        )
        cones.append(cone)
    return Fan(rays=tuple(rays), maximal_cones=tuple(cones), lineality=lin)


# ---------------------------------------------------------------------------
# volumes via recursive triangulation
# ---------------------------------------------------------------------------

def triangulate(points: list[Vector]) -> list[tuple[int, ...]]:
    """Placing triangulation of conv(points) into full-dimensional simplices,
    returned as index tuples into ``points``."""
    config = PointConfig(dim=len(points[0]), points=tuple(points))
    hrep, inc, flags = hull(config)
    k = hrep.dim
    verts = [i for i in range(len(points)) if flags[i]]
    if len(verts) == k + 1:
        return [tuple(verts)]
    apex = min(verts, key=lambda i: points[i])
    simplices = []
    for row in inc.rows:
        if row >> apex & 1:
            continue
        fpts = [i for i in range(len(points)) if row >> i & 1]
        sub = triangulate([points[i] for i in fpts])
        for s in sub:
            simplices.append(tuple(fpts[i] for i in s) + (apex,))
    return simplices


def relative_volume(points: list[Vector], pivots: list[int]) -> Fraction:
    """Volume of conv(points) inside the coordinate subspace ``pivots``.

    The projection to the pivot coordinates must be injective on the affine
    hull; volumes computed with the same pivots are directly comparable.
    """
    proj = [tuple(p[c] for c in pivots) for p in points]
    uniq: list[Vector] = []
    seen = set()
    for q in proj:
        if q not in seen:
            seen.add(q)
            uniq.append(tuple(Fraction(x) for x in q))
    k = len(pivots)
    total = Fraction(0)
    for simplex in triangulate(uniq):
        rows = [
            [uniq[i][c] - uniq[simplex[0]][c] for c in range(k)]
            for i in simplex[1:]
        ]
        total += abs(_det(rows))
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return total / fact


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    rows = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pr = None
        for i in range(col, n):
            if rows[i][col] != 0:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != col:
            rows[col], rows[pr] = rows[pr], rows[col]
            det = -det
        pv = rows[col][col]
        det *= pv
        rows[col] = [x / pv for x in rows[col]]
        for i in range(col + 1, n):
            if rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return det
