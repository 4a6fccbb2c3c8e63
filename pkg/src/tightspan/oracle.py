"""Independent brute-force reference implementations, used only by tests.

Nothing here shares logic with the production modules beyond the subset
encoding (ints as bit vectors) and fractions.  The hull oracle enumerates
candidate hyperplanes through point subsets instead of running the
incremental construction, and the membership oracle evaluates the argmin
definition directly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

MAX_GROUND = 15
MAX_POINTS = 12
MAX_ORACLE_DIM = 5


# ---------------------------------------------------------------------------
# closure systems
# ---------------------------------------------------------------------------

def brute_closed_sets(system) -> tuple[set[int], set[tuple[int, int]]]:
    """Close all 2^|S| subsets; return distinct closed sets and covering pairs
    (as pairs of set encodings)."""
    n = system.ground.size
    if n > MAX_GROUND:
        raise ValueError(f"brute force limited to ground sets of size {MAX_GROUND}")
    closed = {system.close(a) for a in range(1 << n)}
    covers = set()
    for a in closed:
        for b in closed:
            if a != b and a & b == a:
                if not any(
                    c != a and c != b and a & c == a and c & b == c for c in closed
                ):
                    covers.add((a, b))
    return closed, covers


# ---------------------------------------------------------------------------
# convex hulls by hyperplane enumeration
# ---------------------------------------------------------------------------

def _orrref(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pr = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
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
    return rows[:rank], pivots


def _orank(rows):
    return len(_orrref([[Fraction(x) for x in r] for r in rows])[0])


def _oprimitive(vec):
    fr = [Fraction(x) for x in vec]
    mult = lcm(*(f.denominator for f in fr)) if fr else 1
    ints = [int(f * mult) for f in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def brute_hull(config):
    """All supporting hyperplanes spanned by affinely independent point subsets.

    Returns (facets, equations) where each entry is (normal, offset) with the
    convention normal.x + offset >= 0 on the configuration (inward normal),
    facets listed as (normal, offset, incidence mask).
    """
    pts = config.points
    npts = len(pts)
    d = config.dim
    if npts > MAX_POINTS or d > MAX_ORACLE_DIM:
        raise ValueError("brute hull limited to small instances")

    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    k = _orank(diffs)

    # affine hull equations: nullspace of the difference matrix
    rr, pivots = _orrref([[Fraction(x) for x in r] for r in diffs])
    free = [c for c in range(d) if c not in pivots]
    equations = []
    for f in free:
        v = [Fraction(0)] * d
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rr[i][f]
        nvec = _oprimitive(v)
        off = -sum(a * b for a, b in zip(nvec, pts[0]))
        equations.append((nvec, off))

    if k == 0:
        return [], equations

    facets = {}
    for subset in combinations(range(npts), k):
        base = pts[subset[0]]
        rows = [[pts[i][c] - base[c] for c in range(d)] for i in subset[1:]]
        if _orank(rows) != k - 1:
            continue
        # normal: orthogonal to the subset differences, inside the affine hull
        # solve for n with n . (p_i - p_0) = 0 for subset and n . eq-normal = 0
        system = rows + [[Fraction(x) for x in n] for n, _ in equations]
        sol_rr, sol_piv = _orrref([[Fraction(x) for x in r] for r in system])
        free_cols = [c for c in range(d) if c not in sol_piv]
        if len(free_cols) != 1:
            continue
        v = [Fraction(0)] * d
        v[free_cols[0]] = Fraction(1)
        for i, p in enumerate(sol_piv):
            v[p] = -sol_rr[i][free_cols[0]]
        nvec = _oprimitive(v)
        off = -sum(a * b for a, b in zip(nvec, base))
        vals = [sum(a * b for a, b in zip(nvec, p)) + off for p in pts]
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            nvec = tuple(-x for x in nvec)
            off = -off
            vals = [-x for x in vals]
        else:
            continue
        onset = sum(1 << i for i, x in enumerate(vals) if x == 0)
        on_pts = [pts[i] for i in range(npts) if onset >> i & 1]
        span = [[a - b for a, b in zip(p, on_pts[0])] for p in on_pts[1:]]
        if _orank(span) != k - 1:
            continue
        facets[onset] = (nvec, off, onset)
    return sorted(facets.values()), equations


def brute_lower_cells(config, heights):
    """Maximal cells of the regular subdivision, via the hyperplane oracle on
    the lifted configuration.  Returns a set of point-index masks."""
    lifted_rows = [tuple(p) + (h,) for p, h in zip(config.points, heights)]
    from .exactgeom import PointConfig  # type construction only, no logic reuse

    lifted = PointConfig.from_rows(lifted_rows)
    base_diffs = [
        [a - b for a, b in zip(p, config.points[0])] for p in config.points[1:]
    ]
    k = _orank(base_diffs)
    lifted_diffs = [
        [a - b for a, b in zip(p, lifted_rows[0])] for p in lifted_rows[1:]
    ]
    if _orank(lifted_diffs) == k:
        return {(1 << len(config.points)) - 1}
    facets, _ = brute_hull(lifted)
    cells = set()
    for nvec, off, onset in facets:
        if nvec[-1] > 0:
            cells.add(onset)
    return cells


# ---------------------------------------------------------------------------
# tropical membership
# ---------------------------------------------------------------------------

def brute_tls_membership(vm, x) -> bool:
    """Evaluate the defining condition directly: the bases minimizing
    value(B) - e_B . x must jointly cover the ground set."""
    m = vm.matroid
    best = None
    argmin = []
    for bmask in sorted(m.bases):
        dot = sum(Fraction(x[i]) for i in range(m.n) if bmask >> i & 1)
        val = vm.valuation.value(bmask) - dot
        if best is None or val < best:
            best = val
            argmin = [bmask]
        elif val == best:
            argmin.append(bmask)
    union = 0
    for bmask in argmin:
        union |= bmask
    return union == (1 << m.n) - 1
