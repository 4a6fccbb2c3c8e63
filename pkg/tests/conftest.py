"""Shared builders: small polytopes, fans, matroids and the closure-system
corpus used by both the unit tests and the acceptance suite."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from tightspan import (
    ClosureSystem,
    GroundSet,
    HeightFunction,
    Matroid,
    PointConfig,
    Valuation,
    fan_closure,
    hull,
    normal_fan,
    polytope_closure_facet,
    polytope_closure_vertex,
    regular_subdivision,
    restrict_to_lower_set,
    tight_span_closure,
)


def square_config() -> PointConfig:
    return PointConfig.from_rows([[0, 0], [1, 0], [0, 1], [1, 1]])


def triangle_config() -> PointConfig:
    return PointConfig.from_rows([[0, 0], [2, 0], [0, 2]])


def pentagon_config() -> PointConfig:
    return PointConfig.from_rows([[0, 0], [2, 0], [3, 2], [1, 4], [-1, 2]])


def cube_config() -> PointConfig:
    return PointConfig.from_rows(
        [[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    )


def hypersimplex(r: int, n: int) -> PointConfig:
    return Matroid.uniform(r, n).polytope()


def fano_matroid() -> Matroid:
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    line_masks = {sum(1 << i for i in l) for l in lines}
    bases = [
        c for c in combinations(range(7), 3) if sum(1 << i for i in c) not in line_masks
    ]
    return Matroid.from_bases(7, bases)


def fano_lines():
    return [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def u12_power(d: int) -> Matroid:
    m = Matroid.uniform(1, 2)
    out = m
    for _ in range(d - 1):
        out = out.direct_sum(m)
    return out


def quartet_vm():
    from tightspan import ValuatedMatroid

    m = Matroid.uniform(2, 4)
    vals = {b: Fraction(0) for b in m.bases}
    vals[(1 << 2) | (1 << 3)] = Fraction(1)
    return ValuatedMatroid(matroid=m, valuation=Valuation(owner=m, values=vals))


def interval_subdivision():
    cfg = PointConfig.from_rows([[-1], [0], [1]])
    return regular_subdivision(cfg, HeightFunction.from_rows([1, 0, 1]))


def three_path_subdivision():
    cfg = PointConfig.from_rows([[0], [1], [2], [3]])
    return regular_subdivision(cfg, HeightFunction.from_rows([3, 1, 1, 3]))


def two_pyramid_subdivision():
    cfg = hypersimplex(2, 4)
    return regular_subdivision(cfg, HeightFunction.from_rows([1, 0, 0, 0, 0, 1]))


def identity_system(n: int) -> ClosureSystem:
    return ClosureSystem(GroundSet(n), lambda a: a)


def vertex_system(config: PointConfig) -> ClosureSystem:
    hrep, inc, flags = hull(config)
    return polytope_closure_vertex(inc.restricted_to(flags))


def facet_system(config: PointConfig) -> ClosureSystem:
    hrep, inc, flags = hull(config)
    return polytope_closure_facet(inc)


def closure_corpus() -> list[tuple[str, ClosureSystem]]:
    """Named closure systems with |S| <= 15, all brute-forceable."""
    corpus: list[tuple[str, ClosureSystem]] = []

    for n in (1, 2, 3, 6):
        corpus.append((f"identity-{n}", identity_system(n)))

    for name, cfg in [
        ("square", square_config()),
        ("triangle", triangle_config()),
        ("pentagon", pentagon_config()),
        ("cube", cube_config()),
        ("simplex-1-3", hypersimplex(1, 3)),
        ("hypersimplex-2-4", hypersimplex(2, 4)),
    ]:
        corpus.append((f"vertex-{name}", vertex_system(cfg)))

    for name, cfg in [
        ("square", square_config()),
        ("triangle", triangle_config()),
        ("cube", cube_config()),
        ("hypersimplex-2-4", hypersimplex(2, 4)),
    ]:
        corpus.append((f"facet-{name}", facet_system(cfg)))

    from tightspan import Fan

    corpus.append(("fan-square", fan_closure(normal_fan(square_config()))))
    corpus.append(("fan-cube", fan_closure(normal_fan(cube_config()))))
    corpus.append(
        (
            "fan-orthant-2",
            fan_closure(Fan(rays=((1, 0), (0, 1)), maximal_cones=((0, 1),))),
        )
    )
    corpus.append(
        (
            "fan-orthant-3",
            fan_closure(
                Fan(rays=((1, 0, 0), (0, 1, 0), (0, 0, 1)), maximal_cones=((0, 1, 2),))
            ),
        )
    )

    for name, m in [
        ("u13", Matroid.uniform(1, 3)),
        ("u23", Matroid.uniform(2, 3)),
        ("u24", Matroid.uniform(2, 4)),
        ("u35", Matroid.uniform(3, 5)),
        ("fano", fano_matroid()),
        ("u12+u12", u12_power(2)),
        ("with-loop", Matroid.from_bases(3, [[0, 1]])),
    ]:
        corpus.append((f"flats-{name}", m.closure_system()))

    fig1 = interval_subdivision()
    corpus.append(("span-interval-free", tight_span_closure(fig1, [])))
    corpus.append(
        ("span-interval-tight", tight_span_closure(fig1, list(fig1.boundary_facets)))
    )
    sq_triv = regular_subdivision(square_config(), HeightFunction.from_rows([0] * 4))
    corpus.append(("span-square-trivial", tight_span_closure(sq_triv, [])))
    pyr = two_pyramid_subdivision()
    corpus.append(("span-two-pyramids", tight_span_closure(pyr, [])))
    corpus.append(("span-three-path", tight_span_closure(three_path_subdivision(), [])))

    sq_sys = vertex_system(square_config())
    corpus.append(
        (
            "restricted-skeleton-square",
            restrict_to_lower_set(sq_sys, lambda c: c.bit_count() <= 1),
        )
    )
    marked = 0b0011  # vertex set of one edge of the square
    corpus.append(
        (
            "restricted-marked-edge",
            restrict_to_lower_set(sq_sys, lambda c: c & marked == 0),
        )
    )
    u24_sys = Matroid.uniform(2, 4).closure_system()
    corpus.append(("restricted-always", restrict_to_lower_set(u24_sys, lambda c: True)))
    cube_sys = vertex_system(cube_config())
    corpus.append(
        (
            "restricted-skeleton-cube",
            restrict_to_lower_set(cube_sys, lambda c: c.bit_count() <= 2),
        )
    )

    return corpus
