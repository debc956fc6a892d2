"""Typed undirected multigraph with neighbor lists partitioned by node type."""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np
import scipy.sparse as sp

from .errors import GraphError, GraphFrozen, MissingNode, TypeConflict


class TypeRegistry:
    """Bijective interning of type names to small consecutive integers."""

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> int:
        tid = self._ids.get(name)
        if tid is None:
            tid = len(self._names)
            self._ids[name] = tid
            self._names.append(name)
        return tid

    def id(self, name: str) -> int:
        return self._ids[name]

    def name(self, tid: int) -> str:
        return self._names[tid]

    def get(self, name: str) -> int | None:
        return self._ids.get(name)

    def __contains__(self, name: object) -> bool:
        return name in self._ids

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def __len__(self) -> int:
        return len(self._names)

    def copy(self) -> TypeRegistry:
        return TypeRegistry(self._names)

    def __repr__(self) -> str:
        return f"TypeRegistry({self._names!r})"


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    edge_type: str
    weight: float = 1.0


class HeteroGraph:
    """Heterogeneous undirected multigraph.

    Node handles are the node id strings; each id carries exactly one type.
    Neighbor lists are kept per (node, neighbor type) in node insertion order,
    so every traversal over a given graph is reproducible.  After
    :meth:`freeze` the graph rejects mutation and may be shared freely
    between reader threads.
    """

    def __init__(self) -> None:
        self.node_types = TypeRegistry()
        self.edge_types = TypeRegistry()
        self._index: dict[str, int] = {}
        self._names: list[str] = []
        self._ntype: list[int] = []
        # node -> neighbor type id -> sorted [(neighbor index, edge index)]
        self._adj: list[dict[int, list[tuple[int, int]]]] = []
        # (src index, dst index, edge type id, weight)
        self._edges: list[tuple[int, int, int, float]] = []
        self._members: dict[int, list[int]] = {}
        self._frozen = False
        self._lock = threading.Lock()
        self._cache: dict[tuple, object] = {}

    # -- construction -----------------------------------------------------

    def add_node(self, node: str, node_type: str) -> str:
        self._check_mutable()
        idx = self._index.get(node)
        if idx is not None:
            existing = self.node_types.name(self._ntype[idx])
            if existing != node_type:
                raise TypeConflict(node, existing, node_type)
            return node
        tid = self.node_types.intern(node_type)
        idx = len(self._names)
        self._index[node] = idx
        self._names.append(node)
        self._ntype.append(tid)
        self._adj.append({})
        self._members.setdefault(tid, []).append(idx)
        return node

    def add_edge(self, src: str, dst: str, edge_type: str, weight: float = 1.0) -> int:
        self._check_mutable()
        u = self._idx(src)
        v = self._idx(dst)
        if u == v:
            raise GraphError(f"self-loop on {src!r} is not supported")
        weight = float(weight)
        if not weight >= 0.0:
            raise ValueError(f"edge weight must be nonnegative, got {weight}")
        eid = len(self._edges)
        self._edges.append((u, v, self.edge_types.intern(edge_type), weight))
        bisect.insort(self._adj[u].setdefault(self._ntype[v], []), (v, eid))
        bisect.insort(self._adj[v].setdefault(self._ntype[u], []), (u, eid))
        return eid

    def freeze(self) -> HeteroGraph:
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def _check_mutable(self) -> None:
        if self._frozen:
            raise GraphFrozen("graph is frozen")

    # -- lookups ----------------------------------------------------------

    def _idx(self, node: str) -> int:
        try:
            return self._index[node]
        except KeyError:
            raise MissingNode(node) from None

    def __contains__(self, node: object) -> bool:
        return node in self._index

    def __len__(self) -> int:
        return len(self._names)

    @property
    def num_nodes(self) -> int:
        return len(self._names)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def nodes(self, node_type: str | None = None) -> list[str]:
        if node_type is None:
            return list(self._names)
        tid = self.node_types.get(node_type)
        if tid is None:
            return []
        return [self._names[i] for i in self._members.get(tid, ())]

    def node_type(self, node: str) -> str:
        return self.node_types.name(self._ntype[self._idx(node)])

    def order(self, node: str) -> int:
        """Insertion rank of ``node``; the canonical neighbor ordering."""
        return self._idx(node)

    def edges(self) -> Iterator[Edge]:
        names, etypes = self._names, self.edge_types
        for u, v, et, w in self._edges:
            yield Edge(names[u], names[v], etypes.name(et), w)

    def neighbors_by_type(self, node: str, node_type: str) -> list[tuple[str, float]]:
        """Neighbors of ``node`` having ``node_type``, one entry per edge."""
        u = self._idx(node)
        tid = self.node_types.get(node_type)
        if tid is None:
            return []
        names, edges = self._names, self._edges
        return [(names[v], edges[e][3]) for v, e in self._adj[u].get(tid, ())]

    def typed_neighbors(
        self, node: str, node_type: str, edge_type: str | None = None
    ) -> list[str]:
        """Neighbor ids of a given type, with multiplicity, optionally by edge type."""
        u = self._idx(node)
        tid = self.node_types.get(node_type)
        if tid is None:
            return []
        entries = self._adj[u].get(tid, ())
        if edge_type is None:
            return [self._names[v] for v, _ in entries]
        etid = self.edge_types.get(edge_type)
        return [self._names[v] for v, e in entries if self._edges[e][2] == etid]

    def neighbors(self, node: str) -> list[tuple[str, float]]:
        u = self._idx(node)
        names, edges = self._names, self._edges
        out: list[tuple[int, int]] = []
        for tid in sorted(self._adj[u]):
            out.extend(self._adj[u][tid])
        return [(names[v], edges[e][3]) for v, e in out]

    def degree(self, node: str) -> int:
        return sum(len(lst) for lst in self._adj[self._idx(node)].values())

    def edge_multiplicity(self, u: str, v: str, edge_type: str | None = None) -> int:
        ui, vi = self._idx(u), self._idx(v)
        entries = self._adj[ui].get(self._ntype[vi], ())
        lo = bisect.bisect_left(entries, (vi, -1))
        count = 0
        etid = None if edge_type is None else self.edge_types.get(edge_type)
        if edge_type is not None and etid is None:
            return 0
        for w, e in entries[lo:]:
            if w != vi:
                break
            if etid is None or self._edges[e][2] == etid:
                count += 1
        return count

    def has_edge(self, u: str, v: str, edge_type: str | None = None) -> bool:
        return self.edge_multiplicity(u, v, edge_type) > 0

    def schema(self) -> frozenset[tuple[str, str, str]]:
        """All (type, type, edge type) triples realized by some edge, both orientations."""
        key = ("schema",)
        cached = self._cache.get(key)
        if cached is None:
            triples = set()
            nt, et = self.node_types, self.edge_types
            for u, v, e, _ in self._edges:
                a, b, t = nt.name(self._ntype[u]), nt.name(self._ntype[v]), et.name(e)
                triples.add((a, b, t))
                triples.add((b, a, t))
            cached = frozenset(triples)
            if self._frozen:
                with self._lock:
                    self._cache.setdefault(key, cached)
        return cached  # type: ignore[return-value]

    # -- matrix views used by path counting --------------------------------

    def type_index(self, node_type: str) -> Mapping[str, int]:
        """Position of each node of ``node_type`` in :meth:`nodes` order."""
        self.freeze()
        key = ("index", node_type)
        cached = self._cache.get(key)
        if cached is None:
            cached = {n: i for i, n in enumerate(self.nodes(node_type))}
            with self._lock:
                self._cache.setdefault(key, cached)
        return self._cache[key]  # type: ignore[return-value]

    def type_block(
        self, src_type: str, dst_type: str, edge_type: str | None = None
    ) -> sp.csr_matrix:
        """Edge-multiplicity matrix between two node types.

        Rows follow ``nodes(src_type)``, columns ``nodes(dst_type)``.  Only
        valid once the graph is frozen, since the result is cached.
        """
        self.freeze()
        key = ("block", src_type, dst_type, edge_type)
        cached = self._cache.get(key)
        if cached is not None:
            return cached  # type: ignore[return-value]
        src_ids = self._members.get(self.node_types.get(src_type), [])  # type: ignore[arg-type]
        dst_tid = self.node_types.get(dst_type)
        dst_pos = {v: j for j, v in enumerate(self._members.get(dst_tid, []))}  # type: ignore[arg-type]
        etid = None if edge_type is None else self.edge_types.get(edge_type)
        rows: list[int] = []
        cols: list[int] = []
        if dst_tid is not None and not (edge_type is not None and etid is None):
            for i, u in enumerate(src_ids):
                for v, e in self._adj[u].get(dst_tid, ()):
                    if etid is None or self._edges[e][2] == etid:
                        rows.append(i)
                        cols.append(dst_pos[v])
        data = np.ones(len(rows), dtype=np.int64)
        block = sp.csr_matrix(
            (data, (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
            shape=(len(src_ids), len(dst_pos)),
            dtype=np.int64,
        )
        block.sum_duplicates()
        block.sort_indices()
        with self._lock:
            self._cache.setdefault(key, block)
        return self._cache[key]  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"<HeteroGraph nodes={self.num_nodes} edges={self.num_edges}>"


def filter_high_degree(graph: HeteroGraph, thresholds: Mapping[str, int]) -> HeteroGraph:
    """Drop every node whose degree exceeds its type's threshold.

    Degrees are read from ``graph`` once; the removal is not iterated.  Types
    without a threshold are kept whole.  Returns a new frozen graph.
    """
    for t, limit in thresholds.items():
        if limit < 0:
            raise ValueError(f"threshold for {t!r} must be nonnegative")
    drop = set()
    for node in graph.nodes():
        limit = thresholds.get(graph.node_type(node))
        if limit is not None and graph.degree(node) > limit:
            drop.add(node)
    out = HeteroGraph()
    out.node_types = graph.node_types.copy()
    out.edge_types = graph.edge_types.copy()
    for node in graph.nodes():
        if node not in drop:
            out.add_node(node, graph.node_type(node))
    for e in graph.edges():
        if e.src not in drop and e.dst not in drop:
            out.add_edge(e.src, e.dst, e.edge_type, e.weight)
    return out.freeze()
