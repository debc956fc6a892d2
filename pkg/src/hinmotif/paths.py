"""Symmetric meta-path counting by bidirectional half-length search.

For a symmetric path only its first half is walked, once from the candidate
nodes and once from the reference nodes.  The number of full path instances
between ``a`` and ``b`` is then the product of their half-path counts summed
over the shared center node (odd lengths), or over the central edges joining
two center-side nodes (even lengths).

Walk counts multiply along layers, so every product is bounded before it is
formed; anything that could exceed the int64 range raises ``CountOverflow``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import CountOverflow, TypeMismatch
from .graph import HeteroGraph
from .query import HalfPath, MetaPath, is_symmetric

_LIMIT = float(2**61)


def _as_half(path: HalfPath | MetaPath | Sequence[str]) -> HalfPath:
    if isinstance(path, HalfPath):
        return path
    if isinstance(path, MetaPath):
        return HalfPath(path.types, path.hops)
    types = tuple(path)
    return HalfPath(types, (None,) * (len(types) - 1))


def _max_rowsum(m: sp.spmatrix) -> float:
    if m.shape[0] == 0 or m.nnz == 0:
        return 0.0
    return float(np.asarray(m.astype(np.float64).sum(axis=1)).max())


def _max_entry(m: sp.spmatrix) -> float:
    return float(m.data.max()) if m.nnz else 0.0


def _checked_product(left: sp.csr_matrix, right: sp.spmatrix) -> sp.csr_matrix:
    """Exact int64 product, refusing results that do not fit."""
    if _max_rowsum(left) * _max_entry(right) >= _LIMIT:
        approx = left.astype(np.float64) @ right.astype(np.float64)
        if _max_entry(approx) >= _LIMIT:
            raise CountOverflow("meta-path count exceeds the 64-bit range")
    out = (left @ right).tocsr()
    out.sum_duplicates()
    out.eliminate_zeros()
    out.sort_indices()
    return out


class ReachabilityMap(Mapping[str, dict[str, int]]):
    """Half-path walk counts: source node -> {reached node: number of walks}."""

    def __init__(
        self,
        sources: Sequence[str],
        targets: Sequence[str],
        matrix: sp.csr_matrix,
        graph: HeteroGraph | None = None,
    ):
        self.graph = graph
        self.sources = list(sources)
        self.targets = list(targets)
        self.matrix = matrix
        self.index = {n: i for i, n in enumerate(self.sources)}

    def __getitem__(self, node: str) -> dict[str, int]:
        i = self.index[node]
        lo, hi = self.matrix.indptr[i], self.matrix.indptr[i + 1]
        cols, vals = self.matrix.indices[lo:hi], self.matrix.data[lo:hi]
        return {self.targets[c]: int(v) for c, v in zip(cols, vals)}

    def __iter__(self) -> Iterator[str]:
        return iter(self.sources)

    def __len__(self) -> int:
        return len(self.sources)

    def vector(self, node: str) -> np.ndarray:
        return self.matrix[self.index[node]].toarray().ravel()

    def as_dict(self) -> dict[str, dict[str, int]]:
        return {n: self[n] for n in self.sources}


def reachable_nodes(
    graph: HeteroGraph,
    nodes: Iterable[str],
    half_path: HalfPath | MetaPath | Sequence[str],
) -> ReachabilityMap:
    """Count walks of ``half_path``'s type sequence from each start node.

    The frontier of all start nodes advances one layer per hop; repeated
    start nodes are expanded once.
    """
    half = _as_half(half_path)
    sources = list(dict.fromkeys(nodes))
    first = half.types[0]
    for n in sources:
        if graph.node_type(n) != first:
            raise TypeMismatch(f"node {n!r} has type {graph.node_type(n)!r}, path starts at {first!r}")
    index = graph.type_index(first)
    rows = np.arange(len(sources), dtype=np.int64)
    cols = np.fromiter((index[n] for n in sources), dtype=np.int64, count=len(sources))
    layer = sp.csr_matrix(
        (np.ones(len(sources), dtype=np.int64), (rows, cols)),
        shape=(len(sources), len(index)),
        dtype=np.int64,
    )
    for a, b, et in zip(half.types, half.types[1:], half.edge_types):
        layer = _checked_product(layer, graph.type_block(a, b, et))
    return ReachabilityMap(sources, graph.nodes(half.types[-1]), layer, graph)


class PairCounts:
    """Full symmetric-path counts between candidate and reference nodes.

    ``a2b`` holds candidate x reference counts, ``a2a`` candidate x candidate
    and ``b2b`` reference x reference, each as a CSR matrix over
    ``candidates`` / ``references`` order.  Zero entries are not stored.
    """

    def __init__(
        self,
        candidates: Sequence[str],
        references: Sequence[str],
        a2b: sp.csr_matrix,
        a2a: sp.csr_matrix,
        b2b: sp.csr_matrix,
        path: MetaPath | None = None,
        graph: HeteroGraph | None = None,
    ):
        self.candidates = list(candidates)
        self.references = list(references)
        self.cand_index = {n: i for i, n in enumerate(self.candidates)}
        self.ref_index = {n: i for i, n in enumerate(self.references)}
        self.a2b = a2b
        self.a2a = a2a
        self.b2b = b2b
        self.path = path
        self.graph = graph

    def between(self, a: str, b: str) -> int:
        return int(self.a2b[self.cand_index[a], self.ref_index[b]])

    def within(self, a: str, e: str) -> int:
        return int(self.a2a[self.cand_index[a], self.cand_index[e]])

    def count(self, x: str, y: str) -> int:
        """Path count between any two covered nodes (the path is symmetric)."""
        ci, ri = self.cand_index, self.ref_index
        if x in ci and y in ci:
            return int(self.a2a[ci[x], ci[y]])
        if x in ci and y in ri:
            return int(self.a2b[ci[x], ri[y]])
        if y in ci and x in ri:
            return int(self.a2b[ci[y], ri[x]])
        if x in ri and y in ri:
            return int(self.b2b[ri[x], ri[y]])
        missing = x if x not in ci and x not in ri else y
        raise KeyError(f"node {missing!r} is not covered by these counts")

    def covers(self, node: str) -> bool:
        return node in self.cand_index or node in self.ref_index

    @staticmethod
    def _nested(m: sp.csr_matrix, rows: list[str], cols: list[str]) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for i, name in enumerate(rows):
            lo, hi = m.indptr[i], m.indptr[i + 1]
            if hi > lo:
                out[name] = {cols[c]: int(v) for c, v in zip(m.indices[lo:hi], m.data[lo:hi])}
        return out

    def a2b_dict(self) -> dict[str, dict[str, int]]:
        return self._nested(self.a2b, self.candidates, self.references)

    def a2a_dict(self) -> dict[str, dict[str, int]]:
        return self._nested(self.a2a, self.candidates, self.candidates)

    def b2b_dict(self) -> dict[str, dict[str, int]]:
        return self._nested(self.b2b, self.references, self.references)


def pair_counts(
    n2n_c: ReachabilityMap,
    n2n_r: ReachabilityMap,
    bridge: sp.spmatrix | None = None,
) -> PairCounts:
    """Join two half-path maps at their center layer.

    ``bridge`` is the center-to-center edge matrix of an even-length path;
    leave it ``None`` when the half paths end on the shared center node.
    """
    if n2n_c.targets != n2n_r.targets:
        raise ValueError("reachability maps were built over different half paths")
    left_c = n2n_c.matrix
    if bridge is not None:
        left_c = _checked_product(left_c, bridge)
    a2a = _checked_product(left_c, n2n_c.matrix.T)
    if n2n_r.sources == n2n_c.sources:
        return PairCounts(n2n_c.sources, n2n_r.sources, a2a, a2a, a2a)
    a2b = _checked_product(left_c, n2n_r.matrix.T)
    left_r = n2n_r.matrix if bridge is None else _checked_product(n2n_r.matrix, bridge)
    b2b = _checked_product(left_r, n2n_r.matrix.T)
    return PairCounts(n2n_c.sources, n2n_r.sources, a2b, a2a, b2b)


def count_symmetric_paths(
    graph: HeteroGraph,
    path: MetaPath,
    candidates: Iterable[str],
    references: Iterable[str],
) -> PairCounts:
    """Path counts for ``path`` among candidate and reference nodes."""
    if not is_symmetric(path):
        raise ValueError(f"{path} is not symmetric")
    half = path.half()
    n2n_c = reachable_nodes(graph, candidates, half)
    refs = list(dict.fromkeys(references))
    n2n_r = n2n_c if refs == n2n_c.sources else reachable_nodes(graph, refs, half)
    bridge = None
    if len(path) % 2 == 0:
        center = half.types[-1]
        bridge = graph.type_block(center, center, path.center_hop)
    counts = pair_counts(n2n_c, n2n_r, bridge)
    counts.path = path
    counts.graph = graph
    return counts


def motif_self_paths(instance, counts: PairCounts, path: MetaPath) -> int:
    """Paths starting and ending inside one motif.

    Sums self paths of every motif node of the path's end type plus the
    paths between each ordered pair of distinct such nodes.
    """
    nodes = instance.nodes_of_type(path.end_type)
    return sum(counts.count(x, y) for x in nodes for y in nodes)
