"""Triangular-edge extremal toolkit: exact search, construction bounds and
simplex symmetrization for the minimum number of edges lying in triangles."""

from triedge.config import Tolerances, TOL
from triedge.graph import (
    Graph,
    GraphFormatError,
    clique_number,
    independence_number,
    induced,
    non_triangular_subgraph,
    parse_graph6,
    to_graph6,
    tr_count,
    triangular_edges,
)
from triedge.extremal import (
    BoundsRecord,
    ConstructionParams,
    bounds,
    build_construction,
    g_of,
    round_params,
    t_of,
)

__all__ = [
    "TOL",
    "Tolerances",
    "Graph",
    "GraphFormatError",
    "clique_number",
    "independence_number",
    "induced",
    "non_triangular_subgraph",
    "parse_graph6",
    "to_graph6",
    "tr_count",
    "triangular_edges",
    "BoundsRecord",
    "ConstructionParams",
    "bounds",
    "build_construction",
    "g_of",
    "round_params",
    "t_of",
]
