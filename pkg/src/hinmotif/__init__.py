"""Outlier motif detection in heterogeneous information networks."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    CountOverflow,
    DegenerateBase,
    EmptyInput,
    GraphError,
    GraphFrozen,
    HinMotifError,
    InvalidReference,
    MissingNode,
    OracleBoundExceeded,
    ParseError,
    PatternMismatch,
    QueryParseError,
    QueryValidationError,
    TypeConflict,
    TypeMismatch,
)
from .graph import Edge, HeteroGraph, filter_high_degree
from .ingest import GraphStats, graph_stats, load_edge_list, read_graph, write_edge_list
from .motifs import MotifInstance, MotifSet, build_reference_set, canonical_form, expand_from, match_pattern
from .paths import PairCounts, ReachabilityMap, count_symmetric_paths, motif_self_paths, pair_counts, reachable_nodes
from .pipeline import QueryResult, run_query
from .query import CANDIDATES, MetaPath, Metric, MotifPattern, QuerySpec, parse_query, serialize_query, symmetrize, validate
from .scoring import RankedList, cos_sim, group_distribution, mos, motif_similarity, norm_con, path_sim, rank

__all__ = [
    "CANDIDATES",
    "CountOverflow",
    "DegenerateBase",
    "Edge",
    "EmptyInput",
    "GraphError",
    "GraphFrozen",
    "GraphStats",
    "HeteroGraph",
    "HinMotifError",
    "InvalidReference",
    "MetaPath",
    "Metric",
    "MissingNode",
    "MotifInstance",
    "MotifPattern",
    "MotifSet",
    "OracleBoundExceeded",
    "PairCounts",
    "ParseError",
    "PatternMismatch",
    "QueryParseError",
    "QueryResult",
    "QuerySpec",
    "QueryValidationError",
    "RankedList",
    "ReachabilityMap",
    "TypeConflict",
    "TypeMismatch",
    "build_reference_set",
    "canonical_form",
    "cos_sim",
    "count_symmetric_paths",
    "expand_from",
    "filter_high_degree",
    "graph_stats",
    "group_distribution",
    "load_edge_list",
    "match_pattern",
    "mos",
    "motif_self_paths",
    "motif_similarity",
    "norm_con",
    "pair_counts",
    "parse_query",
    "path_sim",
    "rank",
    "reachable_nodes",
    "read_graph",
    "run_query",
    "serialize_query",
    "symmetrize",
    "validate",
    "write_edge_list",
]
