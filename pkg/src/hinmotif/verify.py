"""Engine-versus-oracle equivalence sweep over seeded random graphs."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from . import motifs as motifs_mod
from . import paths as paths_mod
from . import scoring as scoring_mod
from .graph import HeteroGraph
from .ingest import dumps_edge_list
from .motifs import MotifInstance
from .oracle import naive_match, oracle_candidates, oracle_mos, oracle_pair_counts
from .query import MetaPath, Metric, MotifPattern, symmetrize
from .synth import random_hetero_graph

PATH_LENGTHS = (3, 5, 7)
MOS_TOLERANCE = 1e-9


@dataclass
class CaseConfig:
    seed: int
    nodes: int
    types: int
    degree: float


@dataclass
class Failure:
    check: str
    case: CaseConfig
    detail: str
    repro: str = ""

    def __str__(self) -> str:
        c = self.case
        head = (
            f"FAIL {self.check} seed={c.seed} nodes={c.nodes} types={c.types} "
            f"degree={c.degree:.3f}: {self.detail}"
        )
        return head + ("\n" + self.repro if self.repro else "")


@dataclass
class VerifyReport:
    cases: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def tally(self, check: str, n: int = 1) -> None:
        self.checks[check] = self.checks.get(check, 0) + n


def case_config(base_seed: int, i: int, max_nodes: int = 40) -> CaseConfig:
    seed = base_seed * 1_000_003 + i
    rng = np.random.default_rng(seed)
    nodes = int(rng.integers(8, max_nodes + 1))
    types = int(rng.integers(2, 5))
    degree = float(rng.uniform(1.0, min(6.0, nodes - 1)))
    return CaseConfig(seed, nodes, types, degree)


def case_graph(case: CaseConfig) -> HeteroGraph:
    return random_hetero_graph(case.nodes, case.types, case.degree, case.seed)


def random_symmetric_path(rng: np.random.Generator, types: list[str], length: int, start: str | None = None) -> MetaPath:
    half = [start if start is not None else types[int(rng.integers(len(types)))]]
    while len(half) < (length + 1) // 2:
        half.append(types[int(rng.integers(len(types)))])
    if length % 2:
        return symmetrize(MetaPath(tuple(half)))
    return MetaPath(tuple(half) + tuple(reversed(half)))


def _subset(rng: np.random.Generator, items: list[str]) -> list[str]:
    if not items:
        return []
    keep = rng.random(len(items)) < 0.6
    keep[int(rng.integers(len(items)))] = True
    return [x for x, k in zip(items, keep) if k]


def _random_pattern(rng: np.random.Generator, types: list[str]) -> MotifPattern:
    shape = int(rng.integers(4))
    pick = lambda: types[int(rng.integers(len(types)))]  # noqa: E731
    if shape == 0:
        return MotifPattern((("A", pick()), ("B", pick())), (("A", "B"),))
    if shape == 1:
        return MotifPattern((("A", pick()), ("B", pick()), ("C", pick())), (("A", "B"), ("B", "C")))
    if shape == 2:
        t = pick()
        return MotifPattern(
            (("A", t), ("B", t), ("C", pick())), (("A", "B"), ("A", "C"), ("B", "C"))
        )
    return MotifPattern(
        (("A", pick()), ("B", pick()), ("C", pick())), (("A", "B"), ("A", "C"), ("B", "C"))
    )


def _repro(graph: HeteroGraph, extra: str) -> str:
    return "--- graph ---\n" + dumps_edge_list(graph) + "--- query ---\n" + extra


def check_path_counts(graph: HeteroGraph, case: CaseConfig, rng, report: VerifyReport) -> None:
    types = list(graph.node_types)
    for length in PATH_LENGTHS:
        path = random_symmetric_path(rng, types, length)
        pool = graph.nodes(path.start_type)
        cands, refs = _subset(rng, pool), _subset(rng, pool)
        if not cands or not refs:
            continue
        counts = paths_mod.count_symmetric_paths(graph, path, cands, refs)
        want = oracle_pair_counts(graph, path, cands, refs)
        got = (counts.a2b_dict(), counts.a2a_dict(), counts.b2b_dict())
        report.tally("path_counts")
        for name, g, w in zip(("A2B", "A2A", "B2B"), got, want):
            if g != w:
                diff = _first_difference(g, w)
                report.failures.append(
                    Failure(
                        "path_counts",
                        case,
                        f"{name} mismatch for {path} at {diff}",
                        _repro(graph, f"path={path} candidates={cands} references={refs}\n"),
                    )
                )
                break


def _first_difference(got: dict, want: dict) -> str:
    for a in sorted(set(got) | set(want)):
        g, w = got.get(a, {}), want.get(a, {})
        for b in sorted(set(g) | set(w)):
            if g.get(b, 0) != w.get(b, 0):
                return f"({a},{b}) engine={g.get(b, 0)} oracle={w.get(b, 0)}"
    return "?"


def _random_query_parts(graph: HeteroGraph, rng):
    types = list(graph.node_types)
    for _ in range(20):
        pattern = _random_pattern(rng, types)
        instances = naive_match(graph, pattern)
        if instances:
            break
    else:
        return None
    starts = [instances[int(rng.integers(len(instances)))].nodes]
    if len(instances) > 1 and rng.random() < 0.3:
        starts.append(instances[int(rng.integers(len(instances)))].nodes)
    ptypes = list(dict.fromkeys(pattern.slot_types))
    search = []
    for _ in range(int(rng.integers(1, 3))):
        length = int(rng.integers(2, 5))
        seq = [ptypes[int(rng.integers(len(ptypes)))]]
        seq += [types[int(rng.integers(len(types)))] for _ in range(length - 1)]
        search.append(MetaPath(tuple(seq)))
    return pattern, starts, search


def check_candidates(graph: HeteroGraph, case: CaseConfig, rng, report: VerifyReport):
    parts = _random_query_parts(graph, rng)
    if parts is None:
        return None
    pattern, starts, search = parts
    got = motifs_mod.expand_from(graph, starts, search, pattern)
    keys = got.keys()
    want = oracle_candidates(graph, pattern, starts, search)
    report.tally("candidates")
    if len(set(keys)) != len(keys) or set(keys) != want:
        report.failures.append(
            Failure(
                "candidates",
                case,
                f"engine-only={sorted(set(keys) - want)[:3]} oracle-only={sorted(want - set(keys))[:3]}",
                _repro(graph, f"pattern={pattern.as_dict()} start={starts} search={[str(p) for p in search]}\n"),
            )
        )
        return None
    return pattern, list(got)


def check_scores(graph: HeteroGraph, case: CaseConfig, rng, report: VerifyReport, parts) -> None:
    if parts is None:
        return
    pattern, cands = parts
    types = list(graph.node_types)
    ptypes = list(dict.fromkeys(pattern.slot_types))
    score_paths = []
    for _ in range(int(rng.integers(1, 3))):
        start = ptypes[int(rng.integers(len(ptypes)))]
        p = random_symmetric_path(rng, types, int(rng.choice([3, 5])), start)
        score_paths.append(MetaPath(p.types, p.edge_types, float(rng.choice([1.0, 0.5, 2.0]))))
    if rng.random() < 0.5:
        refs = cands
    else:
        refs = [m for m in cands if rng.random() < 0.5] or cands[:1]
    sample = cands if len(cands) <= 25 else [cands[int(i)] for i in rng.choice(len(cands), 25, replace=False)]
    memo: dict = {}
    for metric in (Metric.RAW_COUNT, Metric.PATHSIM, Metric.COSSIM, Metric.NORMCON):
        counts = []
        for p in score_paths:
            t = p.end_type
            cn = list(dict.fromkeys(n for m in sample for n in m.nodes_of_type(t)))
            rn = list(dict.fromkeys(n for m in refs for n in m.nodes_of_type(t)))
            counts.append(paths_mod.count_symmetric_paths(graph, p, cn, rn))
        got = scoring_mod.score_candidates(sample, refs, counts, score_paths, metric)
        report.tally("scores")
        for m, g in zip(sample, got):
            w = oracle_mos(graph, m, refs, score_paths, metric, _memo=memo)
            if not math.isclose(g, w, rel_tol=MOS_TOLERANCE, abs_tol=1e-12):
                report.failures.append(
                    Failure(
                        "scores",
                        case,
                        f"{metric.value} score of {m} engine={g!r} oracle={w!r}",
                        _repro(graph, f"pattern={pattern.as_dict()} score_paths={[str(p) for p in score_paths]}\n"),
                    )
                )
                return


def run_equivalence(
    cases: int = 100,
    seed: int = 0,
    max_nodes: int = 40,
    checks: tuple[str, ...] = ("path_counts", "candidates", "scores"),
    progress: Callable[[int], None] | None = None,
) -> VerifyReport:
    """Compare engine and oracle on ``cases`` seeded random graphs."""
    report = VerifyReport()
    for i in range(cases):
        case = case_config(seed, i, max_nodes)
        graph = case_graph(case)
        rng = np.random.default_rng(case.seed + 7)
        if "path_counts" in checks:
            check_path_counts(graph, case, rng, report)
        parts = None
        if "candidates" in checks or "scores" in checks:
            parts = check_candidates(graph, case, rng, report)
        if "scores" in checks:
            check_scores(graph, case, rng, report, parts)
        report.cases += 1
        if progress is not None:
            progress(i)
    return report
