"""Hasse diagrams of finite closure systems and polyhedral duals.

The pipeline: exact rational convex hulls feed regular subdivisions, whose
dual closure systems are enumerated output-sensitively; coordinatizing the
dual gives extended tight spans, and specializing to matroid subdivisions
of hypersimplices gives tropical linear spaces in their coarsest structure.
"""

from .closure import (
    ClosureSystem,
    GroundSet,
    HasseDiagram,
    NodeCapExceeded,
    ganter_hasse,
    poset_statistics,
    restrict_to_lower_set,
)
from .exactgeom import (
    Fan,
    Facet,
    HRep,
    IncidenceMatrix,
    PointConfig,
    fan_closure,
    hull,
    normal_fan,
    polytope_closure_facet,
    polytope_closure_vertex,
)
from .matroid import (
    Matroid,
    MatroidError,
    Valuation,
    corank_valuation,
    direct_sum,
    format_census_line,
    is_matroidal,
    non_matroidal_witness,
    parse_census_line,
)
from .subdivision import (
    ExtendedTightSpan,
    HeightFunction,
    Subdivision,
    bounded_f_vector,
    coordinatize,
    f_vector,
    regular_subdivision,
    subdivision_from_cells,
    tight_span_closure,
)
from .troplin import (
    NonMatroidalValuation,
    SpeyerBoundWarning,
    TropicalLinearSpace,
    ValuatedMatroid,
    bergman_fan,
    cell_at,
    fvector_report,
    speyer_bound,
    speyer_bounds,
    tropical_linear_space,
)

__all__ = [name for name in dir() if not name.startswith("_")]
