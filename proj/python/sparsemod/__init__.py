"""Modularity maximization with a sparse LP relaxation."""

import json

from ._core import (
    Graph,
    GraphError,
    ParseError,
    constraint_counts,
    following,
    following_lower_bound,
    generate_power_law,
    modularity,
    parse_edge_list,
    read_edge_list,
)
from . import _core

__all__ = [
    "Graph",
    "GraphError",
    "ParseError",
    "constraint_counts",
    "detect",
    "following",
    "following_lower_bound",
    "generate_power_law",
    "modularity",
    "parse_edge_list",
    "read_edge_list",
    "solve_lp",
]


def detect(graph, lam=1.0, refine=True, pivot_order="by_node_id", seed=0, time_limit_sec=3600.0):
    """LP relaxation, rounding and refinement. Returns the report as a dict."""
    return json.loads(_core.detect_json(graph, lam, refine, pivot_order, seed, time_limit_sec))


def solve_lp(graph, lam=1.0, formulation="sparse"):
    """Solves the LP relaxation; `values` maps "i,j" to the pair distance."""
    return json.loads(_core.solve_lp_json(graph, lam, formulation))
