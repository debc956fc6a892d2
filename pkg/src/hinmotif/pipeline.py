"""End-to-end outlier motif detection for one query."""

from __future__ import annotations

from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import QueryValidationError
from .graph import HeteroGraph, filter_high_degree
from .motifs import MotifInstance, MotifSet, build_reference_set, expand_from
from .paths import PairCounts, count_symmetric_paths
from .query import MetaPath, QuerySpec, validate
from .scoring import RankedList, combine_path_scores, path_scores, rank


@dataclass
class QueryResult:
    spec: QuerySpec
    graph: HeteroGraph
    candidates: MotifSet
    references: MotifSet
    counts: list[PairCounts]
    scores: list[float]
    ranked: RankedList


def _end_nodes(motifs: list[MotifInstance], node_type: str) -> list[str]:
    return list(dict.fromkeys(n for m in motifs for n in m.nodes_of_type(node_type)))


def prepare_graph(graph: HeteroGraph, thresholds: Mapping[str, int]) -> HeteroGraph:
    return filter_high_degree(graph, thresholds) if thresholds else graph.freeze()


def run_query(
    graph: HeteroGraph,
    spec: QuerySpec,
    *,
    threads: int = 1,
    degree_thresholds: Mapping[str, int] | None = None,
) -> QueryResult:
    """Filter, expand, count, score and rank; raises QueryValidationError on bad input.

    ``degree_thresholds`` override the query's own thresholds type by type.
    Score paths are processed concurrently when ``threads > 1``; results are
    merged in query order, so the output does not depend on scheduling.
    """
    thresholds = {**spec.degree_thresholds, **(degree_thresholds or {})}
    g = prepare_graph(graph, thresholds)
    problems = validate(spec, g)
    if problems:
        raise QueryValidationError(problems)

    candidates = expand_from(g, spec.start, spec.search_paths, spec.pattern)
    references = build_reference_set(spec, g, candidates)
    cand_list, ref_list = list(candidates), list(references)

    def one_path(path: MetaPath) -> tuple[PairCounts, list]:
        t = path.end_type
        counts = count_symmetric_paths(g, path, _end_nodes(cand_list, t), _end_nodes(ref_list, t))
        return counts, path_scores(cand_list, ref_list, counts, path, spec.metric)

    if threads > 1 and len(spec.score_paths) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_path, spec.score_paths))
    else:
        results = [one_path(p) for p in spec.score_paths]

    scores = combine_path_scores([r[1] for r in results], spec.score_paths, len(cand_list))
    return QueryResult(
        spec=spec,
        graph=g,
        candidates=candidates,
        references=references,
        counts=[r[0] for r in results],
        scores=scores,
        ranked=rank(cand_list, scores, spec.top_k),
    )
