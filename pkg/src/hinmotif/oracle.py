"""Brute-force reference implementations used to certify the engine.

Nothing here uses the engine's adjacency indexes, sparse products or
neighbor-driven matching: walks are enumerated explicitly, one at a time,
over an adjacency rebuilt from the raw edge list, and pattern matching tries
every type-correct node for every slot.  Only the canonical instance key is
shared, because deduplication policy is a definition rather than an
optimization.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import OracleBoundExceeded, TypeMismatch
from .graph import HeteroGraph
from .motifs import CanonicalKey, MotifInstance, canonical_form
from .query import MetaPath, Metric, MotifPattern

MAX_NODES = 200
MAX_PATH_LENGTH = 9


def graph_hash(graph: HeteroGraph) -> str:
    h = hashlib.sha256()
    for node in graph.nodes():
        h.update(f"{node}\t{graph.node_type(node)}\n".encode())
    for e in graph.edges():
        h.update(f"{e.src}\t{e.dst}\t{e.edge_type}\t{e.weight!r}\n".encode())
    return h.hexdigest()[:16]


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()[:16]


@dataclass
class OracleResult:
    counts: dict[str, int] = field(default_factory=dict)
    sequences: list[tuple[str, ...]] | None = None
    graph_hash: str = ""
    query_hash: str = ""


def _check_bounds(graph: HeteroGraph, max_nodes: int, length: int = 0) -> None:
    if graph.num_nodes > max_nodes:
        raise OracleBoundExceeded(f"graph has {graph.num_nodes} nodes, oracle bound is {max_nodes}")
    if length > MAX_PATH_LENGTH:
        raise OracleBoundExceeded(f"path length {length} exceeds oracle bound {MAX_PATH_LENGTH}")


class _Adjacency:
    """Edge-list adjacency: node -> [(neighbor, neighbor type, edge type)]."""

    def __init__(self, graph: HeteroGraph):
        self.types = {n: graph.node_type(n) for n in graph.nodes()}
        self.adj: dict[str, list[tuple[str, str, str]]] = defaultdict(list)
        self.multi: Counter = Counter()
        for e in graph.edges():
            self.adj[e.src].append((e.dst, self.types[e.dst], e.edge_type))
            self.adj[e.dst].append((e.src, self.types[e.src], e.edge_type))
            self.multi[(e.src, e.dst, e.edge_type)] += 1
            self.multi[(e.dst, e.src, e.edge_type)] += 1

    def connected(self, u: str, v: str, edge_type: str | None) -> bool:
        if edge_type is not None:
            return self.multi[(u, v, edge_type)] > 0
        return any(w == v for w, _, _ in self.adj[u])


_ADJ_CACHE: dict[int, tuple[HeteroGraph, _Adjacency]] = {}


def _adjacency(graph: HeteroGraph) -> _Adjacency:
    hit = _ADJ_CACHE.get(id(graph))
    if hit is not None and hit[0] is graph and graph.frozen:
        return hit[1]
    adj = _Adjacency(graph)
    if graph.frozen:
        if len(_ADJ_CACHE) > 64:
            _ADJ_CACHE.clear()
        _ADJ_CACHE[id(graph)] = (graph, adj)
    return adj


def _path_spec(meta_path: MetaPath | Sequence[str]) -> tuple[tuple[str, ...], tuple[str | None, ...]]:
    if isinstance(meta_path, MetaPath):
        return meta_path.types, meta_path.hops
    types = tuple(meta_path)
    return types, (None,) * max(0, len(types) - 1)


def enumerate_paths(
    graph: HeteroGraph,
    meta_path: MetaPath | Sequence[str],
    src: str,
    *,
    keep_sequences: bool = True,
    max_nodes: int = MAX_NODES,
) -> OracleResult:
    """Every walk from ``src`` following the type sequence, found by DFS.

    Walks may revisit nodes and reuse edges.  Returns end node -> number of
    walks, and the walks themselves when ``keep_sequences``.
    """
    types, hops = _path_spec(meta_path)
    _check_bounds(graph, max_nodes, len(types))
    adj = _adjacency(graph)
    if src not in adj.types:
        raise TypeMismatch(f"node {src!r} is not in the graph")
    if adj.types[src] != types[0]:
        raise TypeMismatch(f"node {src!r} has type {adj.types[src]!r}, path starts at {types[0]!r}")
    counts: Counter = Counter()
    seqs: list[tuple[str, ...]] | None = [] if keep_sequences else None
    walk = [src]

    def dfs(depth: int) -> None:
        if depth == len(types):
            counts[walk[-1]] += 1
            if seqs is not None:
                seqs.append(tuple(walk))
            return
        want, et = types[depth], hops[depth - 1]
        for v, vt, e in adj.adj[walk[-1]]:
            if vt == want and (et is None or e == et):
                walk.append(v)
                dfs(depth + 1)
                walk.pop()

    dfs(1)
    return OracleResult(
        dict(counts), seqs, graph_hash(graph), _digest([list(types), list(hops), src])
    )


def path_count_table(
    graph: HeteroGraph, meta_path: MetaPath | Sequence[str], sources: Iterable[str], **kw
) -> dict[str, dict[str, int]]:
    return {
        s: enumerate_paths(graph, meta_path, s, keep_sequences=False, **kw).counts
        for s in dict.fromkeys(sources)
    }


def oracle_pair_counts(
    graph: HeteroGraph,
    meta_path: MetaPath,
    candidates: Iterable[str],
    references: Iterable[str],
    **kw,
) -> tuple[dict[str, dict[str, int]], dict[str, dict[str, int]], dict[str, dict[str, int]]]:
    """(candidate->reference, candidate->candidate, reference->reference) counts, zeros omitted."""
    cands = list(dict.fromkeys(candidates))
    refs = list(dict.fromkeys(references))
    table = path_count_table(graph, meta_path, cands + [r for r in refs if r not in cands], **kw)

    def restrict(rows: list[str], cols: list[str]) -> dict[str, dict[str, int]]:
        colset = set(cols)
        out = {}
        for r in rows:
            row = {c: n for c, n in table[r].items() if c in colset and n}
            if row:
                out[r] = row
        return out

    return restrict(cands, refs), restrict(cands, cands), restrict(refs, refs)


def naive_match(
    graph: HeteroGraph, pattern: MotifPattern, *, max_nodes: int = MAX_NODES
) -> list[MotifInstance]:
    """Every instance of ``pattern``, one per canonical key, by exhaustive search."""
    _check_bounds(graph, max_nodes)
    adj = _adjacency(graph)
    pools = [[n for n, t in adj.types.items() if t == st] for st in pattern.slot_types]
    edges = pattern.index_edges
    found: dict[CanonicalKey, MotifInstance] = {}
    chosen: list[str] = []

    def ok(i: int, node: str) -> bool:
        if node in chosen:
            return False
        for a, b, et in edges:
            if a == i and b < i and not adj.connected(node, chosen[b], et):
                return False
            if b == i and a < i and not adj.connected(chosen[a], node, et):
                return False
        return True

    def rec(i: int) -> None:
        if i == len(pools):
            inst = MotifInstance(pattern, tuple(chosen))
            found.setdefault(canonical_form(inst), inst)
            return
        for node in pools[i]:
            if ok(i, node):
                chosen.append(node)
                rec(i + 1)
                chosen.pop()

    rec(0)
    return [found[k] for k in sorted(found)]


def oracle_candidates(
    graph: HeteroGraph,
    pattern: MotifPattern,
    starts: Sequence[Sequence[str]],
    search_paths: Sequence[MetaPath],
    *,
    max_nodes: int = MAX_NODES,
) -> set[CanonicalKey]:
    """Instances touching a search-path terminus, plus the valid start instances."""
    everything = naive_match(graph, pattern, max_nodes=max_nodes)
    valid = {inst.key for inst in everything}
    termini: set[str] = set()
    for start in starts:
        for path in search_paths:
            for node, stype in zip(start, pattern.slot_types):
                if stype != path.types[0] or node not in graph:
                    continue
                ends = enumerate_paths(graph, path, node, keep_sequences=False, max_nodes=max_nodes).counts
                termini.update(e for e in ends if e != node)
    keys = {inst.key for inst in everything if termini.intersection(inst.nodes)}
    for start in starts:
        key = canonical_form(MotifInstance(pattern, tuple(start)))
        if key in valid:
            keys.add(key)
    return keys


def oracle_mos(
    graph: HeteroGraph,
    candidate: MotifInstance,
    references: Sequence[MotifInstance],
    score_paths: Sequence[MetaPath],
    metric: Metric = Metric.RAW_COUNT,
    *,
    max_nodes: int = MAX_NODES,
    _memo: dict | None = None,
) -> float:
    """Motif outlier score recomputed from explicitly enumerated walks."""
    memo = {} if _memo is None else _memo

    def walks(path: MetaPath, x: str) -> dict[str, int]:
        key = (path.types, path.hops, x)
        if key not in memo:
            memo[key] = enumerate_paths(graph, path, x, keep_sequences=False, max_nodes=max_nodes).counts
        return memo[key]

    def between(path: MetaPath, m1: MotifInstance, m2: MotifInstance) -> int:
        t = path.types[-1]
        xs = [n for n, st in zip(m1.nodes, m1.pattern.slot_types) if st == t]
        ys = [n for n, st in zip(m2.nodes, m2.pattern.slot_types) if st == t]
        return sum(walks(path, x).get(y, 0) for x in xs for y in ys)

    total = 0.0
    for path in score_paths:
        per_path = 0.0
        self_c = between(path, candidate, candidate)
        for ref in references:
            p = between(path, candidate, ref)
            if metric is Metric.RAW_COUNT:
                per_path += p
            elif p == 0:
                continue
            elif metric is Metric.PATHSIM:
                d = self_c + between(path, ref, ref)
                per_path += 2 * p / d if d else 0.0
            elif metric is Metric.COSSIM:
                d = self_c * between(path, ref, ref)
                per_path += p / math.sqrt(d) if d else 0.0
            elif metric is Metric.NORMCON:
                per_path += p / self_c
        total += path.weight * per_path
    return total
