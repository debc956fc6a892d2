"""Node similarities, motif outlier scores and ranking.

Motif similarity for one score path compares the nodes of the path's end
type in the two motifs.  The path count between the motifs is the sum over
all cross pairs of nodes; a motif's self count sums all pairs inside it,
including each node with itself.  The four metrics normalize those counts:

* ``RAW_COUNT``: the count itself
* ``PATHSIM``: ``2 * count / (self1 + self2)``
* ``COSSIM``: ``count / sqrt(self1 * self2)``
* ``NORMCON``: ``count / self1``

and a motif's score against a reference set is the weighted sum over score
paths of its similarity to every reference motif.  A low score marks an
outlier.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import CountOverflow, DegenerateBase, EmptyInput, PatternMismatch, TypeMismatch
from .motifs import MotifInstance
from .paths import PairCounts, ReachabilityMap, motif_self_paths
from .query import MetaPath, Metric

SimilarityMetric = Metric


def _same_type(graph, x: str, y: str) -> None:
    if graph is not None and graph.node_type(x) != graph.node_type(y):
        raise TypeMismatch(f"{x!r} and {y!r} have different node types")


def path_sim(x: str, y: str, counts: PairCounts) -> float:
    _same_type(counts.graph, x, y)
    denom = counts.count(x, x) + counts.count(y, y)
    return 2.0 * counts.count(x, y) / denom if denom else 0.0


def cos_sim(x: str, y: str, reach: ReachabilityMap) -> float:
    _same_type(reach.graph, x, y)
    vx = reach.vector(x).astype(np.float64)
    vy = reach.vector(y).astype(np.float64)
    nx, ny = math.sqrt(float(vx @ vx)), math.sqrt(float(vy @ vy))
    if nx == 0.0 or ny == 0.0:
        return 0.0
    return float(vx @ vy) / (nx * ny)


def norm_con(x: str, y: str, counts: PairCounts) -> float:
    _same_type(counts.graph, x, y)
    base = counts.count(x, x)
    between = counts.count(x, y)
    if base == 0:
        if between:
            raise DegenerateBase(f"{x!r} has no self paths but {between} paths to {y!r}")
        return 0.0
    return between / base


def _normalized(metric: Metric, between: int, self1: int, self2: int) -> float:
    if metric is Metric.RAW_COUNT:
        return float(between)
    if between == 0:
        return 0.0
    if metric is Metric.PATHSIM:
        denom = self1 + self2
        return 2.0 * between / denom if denom else 0.0
    if metric is Metric.COSSIM:
        prod = self1 * self2
        return between / math.sqrt(prod) if prod else 0.0
    if metric is Metric.NORMCON:
        if self1 == 0:
            raise DegenerateBase(f"motif has no self paths but {between} paths to its partner")
        return between / self1
    raise ValueError(metric)


def _motif_between(m1: MotifInstance, m2: MotifInstance, counts: PairCounts, path: MetaPath) -> int:
    t = path.end_type
    return sum(counts.count(u, v) for u in m1.nodes_of_type(t) for v in m2.nodes_of_type(t))


def _path_similarity(
    m1: MotifInstance, m2: MotifInstance, counts: PairCounts, path: MetaPath, metric: Metric
) -> float | int:
    between = _motif_between(m1, m2, counts, path)
    if metric is Metric.RAW_COUNT:
        return between
    return _normalized(
        metric, between, motif_self_paths(m1, counts, path), motif_self_paths(m2, counts, path)
    )


def motif_similarity(
    m1: MotifInstance,
    m2: MotifInstance,
    counts: Sequence[PairCounts],
    score_paths: Sequence[MetaPath],
    metric: Metric = Metric.RAW_COUNT,
) -> float:
    """Weighted similarity of two instances of the same pattern.

    ``counts[i]`` must cover the nodes of both motifs for ``score_paths[i]``.
    """
    if m1.pattern != m2.pattern:
        raise PatternMismatch("motifs instantiate different patterns")
    return math.fsum(
        p.weight * _path_similarity(m1, m2, c, p, metric) for p, c in zip(score_paths, counts)
    )


def mos(
    candidate: MotifInstance,
    references: Sequence[MotifInstance],
    counts: Sequence[PairCounts],
    score_paths: Sequence[MetaPath],
    metric: Metric = Metric.RAW_COUNT,
) -> float:
    """Outlier score: summed similarity of ``candidate`` to every reference motif.

    Per path the reference terms are summed first (exactly, for raw counts),
    then weighted.  An empty reference set scores 0.
    """
    total = []
    for p, c in zip(score_paths, counts):
        terms = []
        for ref in references:
            if ref.pattern != candidate.pattern:
                raise PatternMismatch("motifs instantiate different patterns")
            terms.append(_path_similarity(candidate, ref, c, p, metric))
        inner = sum(terms) if metric is Metric.RAW_COUNT else math.fsum(terms)
        total.append(p.weight * inner)
    return math.fsum(total)


# -- bulk scoring ------------------------------------------------------------


def _incidence(motifs: Sequence[MotifInstance], node_type: str, index: dict[str, int]) -> sp.csr_matrix:
    rows, cols = [], []
    for i, m in enumerate(motifs):
        for n in m.nodes_of_type(node_type):
            rows.append(i)
            cols.append(index[n])
    return sp.csr_matrix(
        (np.ones(len(rows), dtype=np.int64), (rows, cols)),
        shape=(len(motifs), len(index)),
        dtype=np.int64,
    )


def _guard(*bounds: float) -> None:
    if math.prod(bounds) >= 2.0**61:
        raise CountOverflow("motif-level path count exceeds the 64-bit range")


def _rowsum_bound(m: sp.spmatrix) -> float:
    if m.nnz == 0:
        return 0.0
    return float(np.asarray(m.astype(np.float64).sum(axis=1)).max())


def _self_counts(inc: sp.csr_matrix, within: sp.csr_matrix) -> np.ndarray:
    s = _rowsum_bound(inc)
    _guard(s, _rowsum_bound(within), s)
    return np.asarray((inc @ within).multiply(inc).sum(axis=1)).ravel()


def path_scores(
    candidates: Sequence[MotifInstance],
    references: Sequence[MotifInstance],
    counts: PairCounts,
    path: MetaPath,
    metric: Metric = Metric.RAW_COUNT,
) -> list[float | int]:
    """Unweighted per-candidate score contribution of one score path."""
    t = path.end_type
    mc = _incidence(candidates, t, counts.cand_index)
    mr = _incidence(references, t, counts.ref_index)
    if metric is Metric.RAW_COUNT:
        mult = np.asarray(mr.sum(axis=0)).ravel()
        _guard(_rowsum_bound(counts.a2b), float(mult.max(initial=0)), _rowsum_bound(mc))
        per_node = counts.a2b @ mult
        return [int(v) for v in mc @ per_node]

    _guard(_rowsum_bound(mc), _rowsum_bound(counts.a2b), _rowsum_bound(mr))
    between = (mc @ counts.a2b @ mr.T).tocsr()
    between.sum_duplicates()
    between.eliminate_zeros()
    between.sort_indices()
    self_c = _self_counts(mc, counts.a2a)
    self_r = _self_counts(mr, counts.b2b)
    out: list[float | int] = []
    for i in range(len(candidates)):
        lo, hi = between.indptr[i], between.indptr[i + 1]
        s1 = int(self_c[i])
        terms = [
            _normalized(metric, int(v), s1, int(self_r[j]))
            for j, v in zip(between.indices[lo:hi], between.data[lo:hi])
        ]
        out.append(math.fsum(terms))
    return out


def score_candidates(
    candidates: Sequence[MotifInstance],
    references: Sequence[MotifInstance],
    counts: Sequence[PairCounts],
    score_paths: Sequence[MetaPath],
    metric: Metric = Metric.RAW_COUNT,
) -> list[float]:
    """``mos`` for every candidate at once, computed from sparse incidences."""
    per_path = [
        path_scores(candidates, references, c, p, metric) for p, c in zip(score_paths, counts)
    ]
    return combine_path_scores(per_path, score_paths, len(candidates))


def combine_path_scores(
    per_path: Sequence[Sequence[float | int]], score_paths: Sequence[MetaPath], n: int
) -> list[float]:
    return [
        math.fsum(p.weight * col[i] for p, col in zip(score_paths, per_path)) for i in range(n)
    ]


# -- ranking -------------------------------------------------------------------


@dataclass(frozen=True)
class RankedEntry:
    rank: int
    instance: MotifInstance
    score: float


@dataclass
class RankedList:
    """Candidates in ascending score order, outliers first."""

    entries: list[RankedEntry] = field(default_factory=list)
    top_k: int | None = None

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def instances(self) -> list[MotifInstance]:
        return [e.instance for e in self.entries]

    @property
    def scores(self) -> list[float]:
        return [e.score for e in self.entries]

    def outliers(self, k: int | None = None) -> list[RankedEntry]:
        k = self.top_k if k is None else k
        return self.entries if k is None else self.entries[:k]

    def most_similar(self, k: int | None = None) -> list[RankedEntry]:
        k = self.top_k if k is None else k
        return self.entries if k is None else self.entries[max(0, len(self.entries) - k):]

    def display(self, k: int | None = None) -> list[RankedEntry]:
        """Both ends of the list: ``k`` outliers then ``k`` most similar, no repeats."""
        k = self.top_k if k is None else k
        if k is None or len(self.entries) <= 2 * k:
            return list(self.entries)
        return self.entries[:k] + self.entries[-k:]


def rank(
    candidates: Sequence[MotifInstance], scores: Sequence[float], top_k: int | None = None
) -> RankedList:
    if len(candidates) != len(scores):
        raise ValueError("need exactly one score per candidate")
    order = sorted(range(len(candidates)), key=lambda i: (scores[i], candidates[i].key))
    entries = [RankedEntry(r, candidates[i], float(scores[i])) for r, i in enumerate(order, start=1)]
    return RankedList(entries, top_k)


def group_bounds(n: int, groups: int) -> list[tuple[int, int]]:
    """Contiguous equal buckets; the remainder goes to the last one."""
    if groups < 1:
        raise ValueError("groups must be positive")
    size = n // groups
    bounds = [(i * size, (i + 1) * size) for i in range(groups - 1)]
    bounds.append(((groups - 1) * size, n))
    return bounds


def group_distribution(ranked: RankedList | Sequence[RankedEntry], groups: int = 10) -> list[dict[str, dict[str, int]]]:
    """Per bucket of the ranked list: node frequencies keyed by slot type.

    Within a type, nodes are ordered by descending frequency, then id.
    """
    entries = list(ranked)
    if not entries:
        raise EmptyInput("cannot group an empty ranked list")
    out = []
    for lo, hi in group_bounds(len(entries), groups):
        freq: dict[str, Counter] = {}
        for e in entries[lo:hi]:
            for t, n in zip(e.instance.pattern.slot_types, e.instance.nodes):
                freq.setdefault(t, Counter())[n] += 1
        out.append(
            {t: dict(sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))) for t, c in freq.items()}
        )
    return out
