"""Typed edge-list loading/writing and corpus statistics."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import IO

from .errors import GraphError, ParseError, TypeConflict
from .graph import HeteroGraph


def _text_lines(stream: IO) -> IO[str]:
    if isinstance(stream, (io.BufferedIOBase, io.RawIOBase)):
        return io.TextIOWrapper(stream, encoding="utf-8", newline=None)
    return stream


def load_edge_list(stream: IO, *, qualify_ids: bool = False) -> HeteroGraph:
    """Build a frozen graph from a tab-separated typed edge list.

    Each data line is ``src_id, src_type, dst_id, dst_type, edge_type[, weight]``.
    Lines starting with ``#`` and blank lines are skipped.  Repeated lines
    become parallel edges.  With ``qualify_ids`` every id is rewritten as
    ``type:id`` so corpora that reuse a token across node types still load.
    """
    graph = HeteroGraph()
    for lineno, raw in enumerate(_text_lines(stream), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (5, 6):
            raise ParseError(lineno, f"expected 5 or 6 tab-separated fields, got {len(fields)}")
        src, src_type, dst, dst_type, edge_type = (f.strip() for f in fields[:5])
        if not all((src, src_type, dst, dst_type, edge_type)):
            raise ParseError(lineno, "empty field")
        weight = 1.0
        if len(fields) == 6:
            try:
                weight = float(fields[5])
            except ValueError:
                raise ParseError(lineno, f"bad weight {fields[5]!r}") from None
            if not weight >= 0.0:
                raise ParseError(lineno, f"negative weight {fields[5]!r}")
        if qualify_ids:
            src, dst = f"{src_type}:{src}", f"{dst_type}:{dst}"
        try:
            graph.add_node(src, src_type)
            graph.add_node(dst, dst_type)
        except TypeConflict as exc:
            exc.line = lineno
            raise
        try:
            graph.add_edge(src, dst, edge_type, weight)
        except GraphError as exc:
            raise ParseError(lineno, str(exc)) from None
    return graph.freeze()


def read_graph(path: str | os.PathLike, **kwargs) -> HeteroGraph:
    with open(path, "rb") as fh:
        return load_edge_list(fh, **kwargs)


def write_edge_list(graph: HeteroGraph, stream: IO[str]) -> None:
    for e in graph.edges():
        weight = int(e.weight) if e.weight.is_integer() else repr(e.weight)
        stream.write(
            f"{e.src}\t{graph.node_type(e.src)}\t{e.dst}\t{graph.node_type(e.dst)}"
            f"\t{e.edge_type}\t{weight}\n"
        )


def dumps_edge_list(graph: HeteroGraph) -> str:
    buf = io.StringIO()
    write_edge_list(graph, buf)
    return buf.getvalue()


@dataclass
class GraphStats:
    node_counts: dict[str, int] = field(default_factory=dict)
    edge_count: int = 0
    average_degree: float = 0.0
    # type -> (node id, degree) of the first node reaching the maximum
    max_degree: dict[str, tuple[str, int]] = field(default_factory=dict)

    @property
    def num_nodes(self) -> int:
        return sum(self.node_counts.values())

    def as_dict(self) -> dict:
        return {
            "node_counts": dict(self.node_counts),
            "edges": self.edge_count,
            "average_degree": self.average_degree,
            "max_degree": {t: {"node": n, "degree": d} for t, (n, d) in self.max_degree.items()},
        }


def graph_stats(graph: HeteroGraph) -> GraphStats:
    stats = GraphStats(edge_count=graph.num_edges)
    for t in graph.node_types:
        members = graph.nodes(t)
        stats.node_counts[t] = len(members)
        best: tuple[str, int] | None = None
        for node in members:
            d = graph.degree(node)
            if best is None or d > best[1]:
                best = (node, d)
        if best is not None:
            stats.max_degree[t] = best
    n = graph.num_nodes
    stats.average_degree = 2.0 * graph.num_edges / n if n else 0.0
    return stats
