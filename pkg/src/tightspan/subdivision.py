"""Regular subdivisions, their dual complexes, and extended tight spans.

A subdivision cell is represented by the set of configuration points lying
in it (a bit mask).  For cells of a polyhedral complex this encoding is
faithful: intersection of cells is intersection of masks, and containment
of cells is containment of masks.  Cells of the regular subdivision are the
point sets of the lower facets of the lifted configuration, i.e. the sets
of lifted points minimizing height(p) - p.x for some direction x.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .closure import (
    ClosureSystem,
    GroundSet,
    HasseDiagram,
    ganter_hasse,
    restrict_to_lower_set,
)
from .exactgeom import (
    Facet,
    HRep,
    IncidenceMatrix,
    IntVector,
    PointConfig,
    Vector,
    _primitive,
    _rank,
    orthogonalize,
    project_off,
    solve_unique,
    hull,
    _nullspace,
)


@dataclass(frozen=True)
class HeightFunction:
    values: tuple[Fraction, ...]

    @staticmethod
    def from_rows(rows) -> "HeightFunction":
        return HeightFunction(values=tuple(Fraction(x) for x in rows))

    @staticmethod
    def from_json(text: str) -> "HeightFunction":
        data = json.loads(text)
        return HeightFunction(values=tuple(Fraction(str(x)) for x in data["values"]))

    def to_json(self) -> str:
        return json.dumps({"values": [str(v) for v in self.values]}, sort_keys=True)


@dataclass(frozen=True)
class Subdivision:
    """Subdivision of a point configuration into cells given as point masks.

    ``maximal_cells`` and ``boundary_facets`` are point-index masks;
    ``carrier_facet[i]`` is the index (into ``base_hrep.facets``) of the
    facet of the hull containing boundary facet i.  ``heights`` is None for
    subdivisions given combinatorially; those support the closure-system
    path but cannot be coordinatized.
    """

    config: PointConfig
    heights: HeightFunction | None
    maximal_cells: tuple[int, ...]
    boundary_facets: tuple[int, ...]
    carrier_facet: tuple[int, ...]
    base_hrep: HRep
    base_incidence: IncidenceMatrix

    @property
    def n_points(self) -> int:
        return len(self.config.points)

    @property
    def all_points_mask(self) -> int:
        return (1 << self.n_points) - 1

    @property
    def dim(self) -> int:
        return self.base_hrep.dim

    def cell_points(self, mask: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.n_points) if mask >> i & 1)

    def to_json(self) -> str:
        return json.dumps(
            {
                "maximal_cells": [list(self.cell_points(c)) for c in self.maximal_cells],
                "boundary_facets": [
                    list(self.cell_points(c)) for c in self.boundary_facets
                ],
                "carrier_facets": list(self.carrier_facet),
            },
            sort_keys=True,
        )


def _assemble(config, heights, cells, base_hrep, base_inc) -> Subdivision:
    """Attach the boundary data: restrict the cells to every hull facet and
    keep the inclusion-maximal pieces, remembering their carrier facets."""
    boundary: list[int] = []
    carriers: list[int] = []
    for fi, frow in enumerate(base_inc.rows):
        cands = sorted({c & frow for c in cells if c & frow})
        maximal = [
            a for a in cands if not any(b != a and a & b == a for b in cands)
        ]
        for b in maximal:
            boundary.append(b)
            carriers.append(fi)
    return Subdivision(
        config=config,
        heights=heights,
        maximal_cells=tuple(cells),
        boundary_facets=tuple(boundary),
        carrier_facet=tuple(carriers),
        base_hrep=base_hrep,
        base_incidence=base_inc,
    )


def regular_subdivision(config: PointConfig, heights: HeightFunction) -> Subdivision:
    """Subdivision induced by lifting each point to its height.

    Maximal cells are the point sets of the lifted hull facets whose inward
    normal has positive last coordinate (the minimizer sets of
    height(p) - p.x).  When the lifted configuration is not full-dimensional
    over the base (heights affine), the subdivision is trivial.
    """
    if len(heights.values) != len(config.points):
        raise ValueError("height function length must match point count")
    base_hrep, base_inc, _ = hull(config)
    lifted = PointConfig(
        dim=config.dim + 1,
        points=tuple(
            p + (h,) for p, h in zip(config.points, heights.values)
        ),
    )
    lifted_hrep, lifted_inc, _ = hull(lifted)

    if lifted_hrep.dim == base_hrep.dim:
        cells = [(1 << len(config.points)) - 1]
    else:
        cells = [
            row
            for facet, row in zip(lifted_hrep.facets, lifted_inc.rows)
            if facet.normal[-1] > 0
        ]
        cells.sort()
    return _assemble(config, heights, cells, base_hrep, base_inc)


def subdivision_from_cells(config: PointConfig, maximal_cells) -> Subdivision:
    """Subdivision given combinatorially by its maximal cells (point-index
    collections or masks).  Supports the closure-system path only; without
    a height function there is nothing to coordinatize."""
    base_hrep, base_inc, _ = hull(config)
    npts = len(config.points)
    cells = []
    for c in maximal_cells:
        m = c if isinstance(c, int) else sum(1 << i for i in c)
        if m == 0 or m >> npts:
            raise ValueError("cell indices outside the configuration")
        cells.append(m)
    cells = sorted(set(cells))
    for a in cells:
        if any(b != a and a & b == a for b in cells):
            raise ValueError("maximal cells must not contain one another")
    return _assemble(config, None, cells, base_hrep, base_inc)


def span_ground(sub: Subdivision) -> GroundSet:
    """Ground set for the dual closure system: maximal cells then boundary
    facets, labelled max<i> / bd<i>."""
    labels = tuple(f"max{i}" for i in range(len(sub.maximal_cells))) + tuple(
        f"bd{i}" for i in range(len(sub.boundary_facets))
    )
    return GroundSet(len(labels), labels=labels)


def _generator_masks(sub: Subdivision) -> list[int]:
    return list(sub.maximal_cells) + list(sub.boundary_facets)


def _normalize_gamma(sub: Subdivision, gamma) -> list[int]:
    """Turn gamma members (point-index collections or masks) into point masks
    and validate each lies in some facet of the hull."""
    masks = []
    for g in gamma:
        m = g if isinstance(g, int) else sum(1 << i for i in g)
        if m == 0:
            continue
        if not any(m & ~row == 0 for row in sub.base_incidence.rows):
            raise ValueError(
                f"gamma member {sorted(sub.cell_points(m))} is not contained "
                "in any facet of the hull"
            )
        masks.append(m)
    return masks


def tight_span_closure(sub: Subdivision, gamma=()) -> ClosureSystem:
    """Closure system of the subdivision's dual, restricted by gamma.

    Ground elements are the maximal cells and the maximal boundary facets.
    For nonempty F the closure collects every generator containing the cell
    cut out by F; closed sets whose cell lies inside a gamma member are
    collapsed to the full ground set via the lower-set restriction.
    """
    gens = _generator_masks(sub)
    ground = span_ground(sub)
    all_pts = sub.all_points_mask
    gamma_masks = _normalize_gamma(sub, gamma)

    def cell_of(f: int) -> int:
        q = all_pts
        for j in range(len(gens)):
            if f >> j & 1:
                q &= gens[j]
        return q

    def base_close(f: int) -> int:
        if f == 0:
            return 0
        q = cell_of(f)
        out = 0
        for j, g in enumerate(gens):
            if q & ~g == 0:
                out |= 1 << j
        return out

    def keep(f: int) -> bool:
        q = cell_of(f)
        return all(q & ~t for t in gamma_masks)

    return restrict_to_lower_set(ClosureSystem(ground, base_close), keep)


def span_cell_mask(sub: Subdivision, node: int) -> int:
    """Point mask of the subdivision cell dual to a closed generator set."""
    gens = _generator_masks(sub)
    q = sub.all_points_mask
    for j in range(len(gens)):
        if node >> j & 1:
            q &= gens[j]
    return q


@dataclass(frozen=True)
class SpanCell:
    """Dual cell of a closed set: convex hull of the listed dual vertices
    plus the cone of the listed dual rays (plus lineality)."""

    node: int
    vertices: tuple[int, ...]
    rays: tuple[int, ...]
    dim: int


@dataclass(frozen=True)
class ExtendedTightSpan:
    """Coordinatized dual complex of the kept cells of a regular subdivision."""

    base: Subdivision
    gamma: tuple[int, ...]
    hasse: HasseDiagram
    dual_vertices: tuple[Vector, ...]
    dual_rays: tuple[IntVector, ...]
    lineality: tuple[IntVector, ...]
    cells: tuple[SpanCell, ...]

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    def f_vector(self, quotient: bool = True) -> tuple[int, ...]:
        if not self.cells:
            return ()
        shift = 0 if quotient else self.lineality_dim
        top = max(c.dim for c in self.cells) + shift
        counts = [0] * (top + 1)
        for c in self.cells:
            counts[c.dim + shift] += 1
        return tuple(counts)

    def bounded_f_vector(self, quotient: bool = True) -> tuple[int, ...]:
        bounded = [c for c in self.cells if not c.rays]
        if not bounded:
            return ()
        shift = 0 if quotient else self.lineality_dim
        top = max(c.dim for c in bounded) + shift
        counts = [0] * (top + 1)
        for c in bounded:
            counts[c.dim + shift] += 1
        return tuple(counts)

    def to_json(self, quotient: bool = True) -> str:
        return json.dumps(
            {
                "vertices": [[str(x) for x in v] for v in self.dual_vertices],
                "rays": [list(r) for r in self.dual_rays],
                "lineality": [list(l) for l in self.lineality],
                "cells": [
                    {"vertices": list(c.vertices), "rays": list(c.rays)}
                    for c in self.cells
                ],
                "f_vector": list(self.f_vector(quotient)),
                "bounded_f_vector": list(self.bounded_f_vector(quotient)),
                "lineality_dim": self.lineality_dim,
            },
            sort_keys=True,
        )


def coordinatize(sub: Subdivision, gamma=(), node_cap: int = 10_000_000) -> ExtendedTightSpan:
    """Enumerate the kept closed sets and attach dual coordinates.

    The dual vertex of a maximal cell is the unique solution of
    height(p) - p.x = height(q) - q.x over the cell, normalized to the
    representative orthogonal to the lineality space.  The dual ray of a
    boundary facet is the outward normal of its carrier facet, projected
    orthogonally to the lineality and scaled to a primitive integer vector.
    """
    if sub.heights is None:
        raise ValueError(
            "coordinatization needs a regular subdivision with heights; "
            "combinatorial subdivisions only expose the closure system"
        )
    system = tight_span_closure(sub, gamma)
    gamma_masks = _normalize_gamma(sub, gamma)
    diagram = ganter_hasse(system, node_cap=node_cap)

    pts = sub.config.points
    hvals = sub.heights.values
    d = sub.config.dim
    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    lineality = tuple(_nullspace(diffs, d))
    lin_ortho = orthogonalize(lineality)

    dual_vertices = []
    for cmask in sub.maximal_cells:
        idx = sub.cell_points(cmask)
        base = idx[0]
        rows = [
            [pts[i][c] - pts[base][c] for c in range(d)] for i in idx[1:]
        ]
        rhs = [hvals[i] - hvals[base] for i in idx[1:]]
        rows += [list(map(Fraction, l)) for l in lineality]
        rhs += [Fraction(0)] * len(lineality)
        dual_vertices.append(solve_unique(rows, rhs))

    dual_rays = []
    for carrier in sub.carrier_facet:
        inward = sub.base_hrep.facets[carrier].normal
        outward = [-x for x in inward]
        dual_rays.append(_primitive(project_off(outward, lin_ortho)))

    n_max = len(sub.maximal_cells)
    n_total = n_max + len(sub.boundary_facets)
    full = system.ground.full_mask

    cells = []
    trivial_point = sub.dim == 0
    for node in diagram.nodes:
        if node == 0:
            continue
        if node == full and not trivial_point:
            continue
        vs = tuple(i for i in range(n_max) if node >> i & 1)
        rs = tuple(i for i in range(len(sub.boundary_facets)) if node >> (n_max + i) & 1)
        gens = [
            [a - b for a, b in zip(dual_vertices[i], dual_vertices[vs[0]])]
            for i in vs[1:]
        ]
        gens += [list(dual_rays[i]) for i in rs]
        cells.append(SpanCell(node=node, vertices=vs, rays=rs, dim=_rank(gens)))

    return ExtendedTightSpan(
        base=sub,
        gamma=tuple(gamma_masks),
        hasse=diagram,
        dual_vertices=tuple(dual_vertices),
        dual_rays=tuple(dual_rays),
        lineality=lineality,
        cells=tuple(cells),
    )


def f_vector(span: ExtendedTightSpan, quotient: bool = True) -> tuple[int, ...]:
    return span.f_vector(quotient=quotient)


def bounded_f_vector(span: ExtendedTightSpan, quotient: bool = True) -> tuple[int, ...]:
    return span.bounded_f_vector(quotient=quotient)
