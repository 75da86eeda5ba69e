"""Exact global minimum cut by tree packing and a 2-respecting-cut sweep."""

from ._accel import BACKEND
from .baselines import (
    brute_force_2respect,
    brute_force_min_cut,
    contraction_min_cut,
    stoer_wagner,
)
from .graph import (
    CutResult,
    DisconnectedGraphError,
    EmptySideError,
    Graph,
    GraphError,
    GraphFormatError,
    IntGraph,
    NegativeWeightError,
    VertexRangeError,
    cut_weight,
    format_graph,
    normalize_and_round,
    parse_graph,
)
from .packing import Packing, mst_call_count, pack
from .path_aggregate import PathAggregator
from .respect import min_1respect, min_2respect, min_cut
from .sampler import SamplerConfig, SamplerError, binomial_sample, respecting_trees
from .spanning_tree import HldIndex, RootedTree, decompose, path_intervals

__all__ = [
    "BACKEND",
    "CutResult",
    "DisconnectedGraphError",
    "EmptySideError",
    "Graph",
    "GraphError",
    "GraphFormatError",
    "HldIndex",
    "IntGraph",
    "NegativeWeightError",
    "Packing",
    "PathAggregator",
    "RootedTree",
    "SamplerConfig",
    "SamplerError",
    "VertexRangeError",
    "binomial_sample",
    "brute_force_2respect",
    "brute_force_min_cut",
    "contraction_min_cut",
    "cut_weight",
    "decompose",
    "format_graph",
    "min_1respect",
    "min_2respect",
    "min_cut",
    "mst_call_count",
    "normalize_and_round",
    "pack",
    "parse_graph",
    "path_intervals",
    "respecting_trees",
    "stoer_wagner",
]
