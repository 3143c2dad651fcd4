"""Exact Lin-Lu-Yau curvature on graph edges and verification tools for
positively curved maximal outerplanar graphs."""

from .curvature import (
    CurvatureResult,
    Method,
    PotentialFunction,
    alpha_curvature,
    combinatorial_curvature,
    edge_objective,
    laplacian,
    lly_edge,
    lly_via_alpha,
)
from .enumerate import canonical_code, enumerate_triangulations, raw_count
from .formulas import exterior_kappa, extract_config, interior_kappa, is_good_pair
from .graph import (
    EdgeKind,
    Graph,
    PolygonTriangulation,
    common_neighbors,
    distances_from,
    edge_kind,
    fan_graph,
    find_maximal_outerplanar_witness,
    graph_from_edges,
    graph_from_triangulation,
    is_maximal_outerplanar,
)
from .transport import Coupling, ProbabilityMeasure, lazy_walk_measure, verify_duality, wasserstein

__version__ = "0.1.0"
