"""Valuated matroids and tropical linear spaces in their coarsest structure.

A valuation on a matroid induces a regular subdivision of the matroid
polytope; the pair is a valuated matroid when every cell of that
subdivision is again a matroid polytope (checked by the edge-direction
criterion).  The tropical linear space is the dual complex restricted to
the cells whose matroids are loop-free, modulo the all-ones direction;
equivalently the extended tight span with respect to the boundary faces
lying in the coordinate hyperplanes x_i = 0.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb

from .exactgeom import _primitive, _rank, orthogonalize, project_off
from .matroid import (
    Matroid,
    MatroidError,
    Valuation,
    matroid_from_points,
    non_matroidal_witness,
    sorted_bases,
)
from .subdivision import (
    ExtendedTightSpan,
    HeightFunction,
    Subdivision,
    coordinatize,
    regular_subdivision,
    span_cell_mask,
)


class SpeyerBoundWarning(UserWarning):
    """A computed bounded f-vector exceeds the conjectured upper bound."""


class NonMatroidalValuation(MatroidError):
    """The induced subdivision has a cell with a forbidden edge direction."""

    def __init__(self, cell_points, edge):
        super().__init__(
            f"valuation induces a non-matroidal cell {sorted(cell_points)} "
            f"with edge direction {edge}"
        )
        self.cell_points = tuple(cell_points)
        self.edge = tuple(edge)


@dataclass(frozen=True)
class ValuatedMatroid:
    """Matroid plus a valuation whose subdivision is matroidal."""

    matroid: Matroid
    valuation: Valuation

    def __post_init__(self):
        if self.valuation.owner.bases != self.matroid.bases:
            raise MatroidError("valuation does not match the matroid's bases")
        witness = non_matroidal_witness(self.subdivision)
        if witness is not None:
            cell, edge = witness
            raise NonMatroidalValuation(
                self.subdivision.cell_points(cell), edge
            )

    @cached_property
    def subdivision(self) -> Subdivision:
        config = self.matroid.polytope()
        heights = HeightFunction(values=self.valuation.heights())
        return regular_subdivision(config, heights)

    @property
    def point_bases(self) -> list[int]:
        """Basis masks in polytope point order."""
        return sorted_bases(self.matroid)


def cell_at(vm: ValuatedMatroid, x) -> Matroid:
    """Matroid of bases minimizing value(B) - e_B . x (a cell of the
    induced subdivision); exact rational comparison throughout."""
    m = vm.matroid
    xs = [Fraction(v) for v in x]
    if len(xs) != m.n:
        raise ValueError("point has wrong length")
    best = None
    argmin: list[int] = []
    for b in sorted_bases(m):
        val = vm.valuation.value(b) - sum(xs[i] for i in range(m.n) if b >> i & 1)
        if best is None or val < best:
            best = val
            argmin = [b]
        elif val == best:
            argmin.append(b)
    return Matroid(n=m.n, r=m.r, bases=frozenset(argmin))


@dataclass(frozen=True)
class TropicalLinearSpace:
    """Dual complex of the loop-free cells, modulo the all-ones direction.

    Coordinates are sum-zero representatives of R^n / R.1; lineality beyond
    the all-ones direction (present exactly for disconnected matroids) is
    reported as a basis, not quotiented away.
    """

    source: ValuatedMatroid
    span: ExtendedTightSpan

    @property
    def n(self) -> int:
        return self.source.matroid.n

    @property
    def r(self) -> int:
        return self.source.matroid.r

    @property
    def lineality_dim(self) -> int:
        """Dimension of the lineality space inside R^n / R.1."""
        return self.span.lineality_dim - 1

    @cached_property
    def lineality_basis(self) -> tuple[tuple[int, ...], ...]:
        """Sum-zero primitive representatives of the extra lineality."""
        ones = [tuple([1] * self.n)]
        ortho = orthogonalize(ones)
        out = []
        for vec in self.span.lineality:
            proj = project_off(vec, ortho)
            if any(proj):
                out.append(_primitive(proj))
        # reduce to an independent subset
        basis: list[tuple[int, ...]] = []
        for v in out:
            if _rank(basis + [list(v)]) > len(basis):
                basis.append(v)
        return tuple(basis)

    @property
    def f_vector(self) -> tuple[int, ...]:
        return self.span.f_vector()

    @property
    def bounded_f_vector(self) -> tuple[int, ...]:
        return self.span.bounded_f_vector()

    @property
    def dim(self) -> int:
        """Top cell dimension inside R^n / R.1."""
        fv = self.f_vector
        return len(fv) - 1 + self.lineality_dim

    def covers_point(self, x) -> bool:
        """Whether the sum-zero class of x lies in the computed complex.

        x lies in the closed dual cell of a closed set F iff the cell cut
        out by F is contained in the minimizer set at x.
        """
        cell = cell_at(self.source, x)
        argmin_mask = 0
        order = self.source.point_bases
        pos = {b: i for i, b in enumerate(order)}
        for b in cell.bases:
            argmin_mask |= 1 << pos[b]
        full = self.span.hasse.ground.full_mask
        sub = self.span.base
        for node in self.span.hasse.nodes:
            if node == 0:
                continue
            if node == full and sub.dim != 0:
                continue
            if span_cell_mask(sub, node) & ~argmin_mask == 0:
                return True
        return False

    def report(self) -> dict:
        bounds = speyer_bounds(self.n, self.r)
        bounded = list(self.bounded_f_vector)
        padded = bounded + [0] * (len(bounds) - len(bounded))
        return {
            "n": self.n,
            "r": self.r,
            "f_vector": list(self.f_vector),
            "bounded_f_vector": bounded,
            "speyer_bounds": list(bounds),
            "within_bound": [a <= b for a, b in zip(padded, bounds)],
            "lineality_dim": self.lineality_dim,
            "dim": self.dim,
        }

    def to_json(self) -> str:
        data = json.loads(self.span.to_json())
        data.update(
            {
                "n": self.n,
                "r": self.r,
                "lineality": [list(v) for v in self.lineality_basis],
                "lineality_dim": self.lineality_dim,
                "speyer_bounds": list(speyer_bounds(self.n, self.r)),
            }
        )
        return json.dumps(data, sort_keys=True)


def _loop_faces(config) -> list[int]:
    """Point masks of the coordinate-zero faces: for each ground element i,
    the points with i-th coordinate zero (the maximal boundary face whose
    cells all have i as a loop).  Empty faces are dropped."""
    n = config.dim
    out = []
    for i in range(n):
        mask = 0
        for j, p in enumerate(config.points):
            if p[i] == 0:
                mask |= 1 << j
        if mask:
            out.append(mask)
    return out


def tropical_linear_space(
    vm: ValuatedMatroid, node_cap: int = 10_000_000
) -> TropicalLinearSpace:
    """Build the tropical linear space of a valuated matroid.

    The subdivision of the matroid polytope is dualized and restricted to
    the closed sets whose cells avoid all coordinate-zero boundary faces,
    i.e. whose cell matroids are loop-free.
    """
    m = vm.matroid
    if m.loops():
        raise MatroidError(
            f"matroid has loops {sorted(i for i in range(m.n) if m.loops() >> i & 1)}; "
            "its tropical linear space is empty"
        )
    sub = vm.subdivision
    gamma = _loop_faces(sub.config)
    span = coordinatize(sub, gamma, node_cap=node_cap)
    tls = TropicalLinearSpace(source=vm, span=span)
    _check_speyer(tls)
    return tls


def bergman_fan(m: Matroid, node_cap: int = 10_000_000) -> TropicalLinearSpace:
    """Tropical linear space of the zero valuation: the loop-free part of
    the normal fan of the matroid polytope, in its coarsest structure."""
    if m.loops():
        raise MatroidError("matroid with loops has no Bergman fan")
    vm = ValuatedMatroid(matroid=m, valuation=Valuation.zero(m))
    return tropical_linear_space(vm, node_cap=node_cap)


def speyer_bound(n: int, r: int, i: int) -> int:
    """Conjectured maximum for the number of (i-1)-dimensional bounded
    faces: C(n-2i, r-i) * C(n-i-1, i-1), zero when arguments degenerate."""
    if not 1 <= i <= r <= n:
        raise ValueError("need 1 <= i <= r <= n")

    def c(a: int, b: int) -> int:
        if a < 0 or b < 0 or b > a:
            return 0
        return comb(a, b)

    return c(n - 2 * i, r - i) * c(n - i - 1, i - 1)


def speyer_bounds(n: int, r: int) -> tuple[int, ...]:
    """Bound per bounded-face dimension 0..r-1 (dimension d uses i = d+1)."""
    return tuple(speyer_bound(n, r, i) for i in range(1, r + 1))


def _check_speyer(tls: TropicalLinearSpace) -> None:
    """Warn loudly when a bounded f-vector exceeds the conjectured bound.

    Skipped when the complex has extra lineality (where cells are never
    geometrically bounded) and for the degenerate single-element ground set.
    """
    if tls.lineality_dim > 0 or tls.n < 2:
        return
    bounds = speyer_bounds(tls.n, tls.r)
    bounded = list(tls.bounded_f_vector)
    if len(bounded) > len(bounds) or any(
        a > b for a, b in zip(bounded, bounds)
    ):
        warnings.warn(
            f"bounded f-vector {tuple(bounded)} exceeds the conjectured "
            f"bound {bounds} for (n, r) = ({tls.n}, {tls.r})",
            SpeyerBoundWarning,
            stacklevel=2,
        )


def fvector_report(tls: TropicalLinearSpace) -> dict:
    return tls.report()
