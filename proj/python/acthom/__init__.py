"""Active recovery of decision-boundary homology."""

from ._acthom import (
    Error,
    Infeasible,
    InsufficientData,
    InvalidFiltration,
    InvalidParameter,
    ParseError,
    annulus,
    bottleneck,
    covering_number_circle,
    feasible_gamma,
    passive_query,
    persistence,
    radius_graph_edges,
    ratio_scan,
    s2_query,
    two_circles,
)

__all__ = [
    "Error",
    "Infeasible",
    "InsufficientData",
    "InvalidFiltration",
    "InvalidParameter",
    "ParseError",
    "annulus",
    "bottleneck",
    "covering_number_circle",
    "feasible_gamma",
    "passive_query",
    "persistence",
    "radius_graph_edges",
    "ratio_scan",
    "s2_query",
    "two_circles",
]
