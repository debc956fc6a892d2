"""TSV and JSON renderings of query results and graph statistics."""

from __future__ import annotations

import json

from .ingest import GraphStats
from .pipeline import QueryResult
from .scoring import group_distribution


def _tsv(rows) -> str:
    return "".join("\t".join(str(c) for c in row) + "\n" for row in rows)


def format_query(
    result: QueryResult,
    fmt: str = "tsv",
    *,
    top_k: int | None = None,
    groups: int | None = None,
) -> str:
    """Both ends of the ranked list, plus node distributions per score group."""
    spec = result.spec
    ranked = result.ranked
    k = spec.top_k if top_k is None else top_k
    shown = ranked.display(k)
    dist = group_distribution(ranked, groups) if groups else None
    slot_ids = spec.pattern.slot_ids
    if fmt == "json":
        doc = {
            "metric": spec.metric.value,
            "score_paths": [
                {"types": list(p.types), "weight": p.weight} for p in spec.score_paths
            ],
            "candidates": len(result.candidates),
            "references": len(result.references),
            "rows": [
                {"rank": e.rank, "nodes": dict(zip(slot_ids, e.instance.nodes)), "score": e.score}
                for e in shown
            ],
        }
        if dist is not None:
            doc["distribution"] = [
                {"group": i, "frequencies": bucket} for i, bucket in enumerate(dist, start=1)
            ]
        return json.dumps(doc, indent=2) + "\n"
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")
    paths = ",".join(str(p) for p in spec.score_paths)
    out = [
        f"# metric={spec.metric.value} candidates={len(result.candidates)} "
        f"references={len(result.references)} score_paths={paths}\n"
    ]
    rows = [("rank", *slot_ids, "score")]
    rows += [(e.rank, *e.instance.nodes, f"{e.score:.3f}") for e in shown]
    out.append(_tsv(rows))
    if dist is not None:
        out.append(f"# distribution groups={groups}\n")
        drows = [("group", "type", "node", "count")]
        for i, bucket in enumerate(dist, start=1):
            for t, freq in bucket.items():
                drows += [(i, t, n, c) for n, c in freq.items()]
        out.append(_tsv(drows))
    return "".join(out)


def format_stats(stats: GraphStats, fmt: str = "tsv") -> str:
    if fmt == "json":
        return json.dumps(stats.as_dict(), indent=2) + "\n"
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")
    rows = [("type", "nodes", "max_degree_node", "max_degree")]
    for t, n in stats.node_counts.items():
        node, deg = stats.max_degree.get(t, ("", 0))
        rows.append((t, n, node, deg))
    return (
        _tsv(rows)
        + f"# edges={stats.edge_count} nodes={stats.num_nodes} "
        f"average_degree={stats.average_degree:.3f}\n"
    )
