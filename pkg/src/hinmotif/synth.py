"""Seeded synthetic heterogeneous graphs and queries for benchmarks and checks."""

from __future__ import annotations

import numpy as np

from .graph import HeteroGraph
from .motifs import match_pattern
from .query import CANDIDATES, MetaPath, Metric, MotifPattern, QuerySpec, symmetrize


def type_names(c: int) -> list[str]:
    return [f"t{i}" for i in range(c)]


def random_hetero_graph(n: int, c: int, k: float, seed: int) -> HeteroGraph:
    """``n`` nodes split round-robin over ``c`` types, expected degree ``k``.

    Every unordered node pair, whatever its types, is joined independently
    with probability ``k / (n - 1)``; the edge type names the type pair.
    """
    if n < 1 or c < 1 or k < 0:
        raise ValueError("need n >= 1, c >= 1, k >= 0")
    if n > 1 and k >= n:
        raise ValueError(f"expected degree {k} must be below the node count {n}")
    rng = np.random.default_rng(seed)
    names = type_names(c)
    members: list[list[str]] = [[] for _ in range(c)]
    g = HeteroGraph()
    for i in range(n):
        t = i % c
        node = f"{names[t]}_{len(members[t])}"
        members[t].append(node)
        g.add_node(node, names[t])
    p = k / (n - 1) if n > 1 else 0.0
    for a in range(c):
        for b in range(a, c):
            na, nb = len(members[a]), len(members[b])
            total = na * (na - 1) // 2 if a == b else na * nb
            if total == 0 or p == 0.0:
                continue
            m = int(rng.binomial(total, p))
            picks = np.sort(rng.choice(total, size=m, replace=False))
            etype = f"{names[a]}-{names[b]}"
            if a == b:
                # Decode upper-triangle pair indices row by row.
                row_starts = np.cumsum([0] + [na - 1 - i for i in range(na - 1)])
                rows = np.searchsorted(row_starts, picks, side="right") - 1
                cols = picks - row_starts[rows] + rows + 1
                pairs = zip(rows.tolist(), cols.tolist())
            else:
                pairs = zip((picks // nb).tolist(), (picks % nb).tolist())
            for i, j in pairs:
                g.add_edge(members[a][i], members[b][j], etype)
    return g.freeze()


def alternating_path(types: list[str], length: int, first: int = 0) -> tuple[str, ...]:
    """Type sequence cycling through ``types`` from position ``first``."""
    return tuple(types[(first + i) % len(types)] for i in range(length))


def symmetric_score_path(types: list[str], length: int, first: int = 0) -> MetaPath:
    """Palindromic path alternating over the first two types."""
    if length < 2:
        raise ValueError("a symmetric score path needs at least two types")
    pair = types[:2] if len(types) > 1 else types
    half = alternating_path(pair, (length + 1) // 2, first)
    if length % 2:
        return symmetrize(MetaPath(half))
    return MetaPath(half + tuple(reversed(half)))


def chain_pattern(types: list[str], size: int) -> MotifPattern:
    """Path-shaped pattern whose slots alternate over the first two types."""
    pair = types[:2] if len(types) > 1 else types
    slots = tuple((f"S{i}", pair[i % len(pair)]) for i in range(size))
    edges = tuple((f"S{i}", f"S{i + 1}") for i in range(size - 1))
    return MotifPattern(slots, edges)


def bench_query(
    graph: HeteroGraph,
    *,
    pattern_size: int,
    search_length: int,
    score_length: int,
    seed: int,
    starts: int = 1,
    metric: Metric = Metric.RAW_COUNT,
) -> QuerySpec:
    """Query over ``graph`` with ``starts`` seeded start instances of a chain pattern."""
    types = list(graph.node_types)
    pattern = chain_pattern(types, pattern_size)
    rng = np.random.default_rng(seed)
    first_type = pattern.slot_types[0]
    pool = [n for n in graph.nodes(first_type) if graph.degree(n) > 0]
    order = rng.permutation(len(pool)) if pool else []
    chosen = []
    for idx in order:
        found = match_pattern(graph, pattern, {pattern.slot_ids[0]: pool[int(idx)]})
        if found:
            chosen.append(found[0].nodes)
            if len(chosen) == starts:
                break
    if not chosen:
        raise ValueError("graph contains no instance of the benchmark pattern")
    pair = types[:2] if len(types) > 1 else types
    search = MetaPath(alternating_path(pair, search_length))
    score = [symmetric_score_path(types, score_length, 0)]
    if len(pair) > 1 and pattern_size > 1:
        score.append(symmetric_score_path(types, score_length, 1))
    return QuerySpec(
        pattern=pattern,
        start=tuple(chosen),
        search_paths=(search,),
        score_paths=tuple(score),
        reference=CANDIDATES,
        metric=metric,
    )
