"""Timing sweeps over seeded synthetic graphs.

Two sweeps mirror the complexity analysis: expected degree ``k`` at a fixed
node count, and score-path length on one fixed graph.  Each point runs the
whole query pipeline ``repeats`` times and keeps the median wall time.
"""

from __future__ import annotations

import json
import statistics
import time
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, replace

from .graph import HeteroGraph
from .pipeline import run_query
from .synth import bench_query, random_hetero_graph

DEFAULT_DEGREES = (2, 4, 8)
DEFAULT_LENGTHS = (3, 5, 7, 9)


@dataclass(frozen=True)
class BenchConfig:
    """One benchmark point: graph shape, query shape and repetition count."""

    types: int = 2
    nodes: int = 2000
    degree: float = 8.0
    search_length: int = 3
    pattern_size: int = 2
    starts: int = 8
    score_length: int = 3
    repeats: int = 5
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        for name in ("types", "nodes", "search_length", "pattern_size", "starts", "score_length", "repeats", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.degree <= 0:
            raise ValueError("degree must be positive")
        if self.degree >= self.nodes:
            raise ValueError(f"expected degree {self.degree} must be below the node count {self.nodes}")
        if self.search_length < 2 or self.score_length < 2:
            raise ValueError("path lengths must be at least 2")


@dataclass
class BenchPoint:
    sweep: str
    nodes: int
    degree: float
    score_length: int
    edges: int
    candidates: int
    median_seconds: float
    max_mos: float
    times: list[float]


def _graph(cfg: BenchConfig) -> HeteroGraph:
    return random_hetero_graph(cfg.nodes, cfg.types, cfg.degree, cfg.seed)


def _prepare(cfg: BenchConfig, graph: HeteroGraph | None = None):
    g = graph if graph is not None else _graph(cfg)
    spec = bench_query(
        g,
        pattern_size=cfg.pattern_size,
        search_length=cfg.search_length,
        score_length=cfg.score_length,
        seed=cfg.seed,
        starts=cfg.starts,
    )
    return g, spec


def _measure(
    configs: Sequence[BenchConfig],
    sweep: str,
    graph: HeteroGraph | None = None,
    progress: Callable[[BenchPoint], None] | None = None,
) -> list[BenchPoint]:
    """Time every configuration, interleaving repetitions round-robin.

    Interleaving spreads slow drifts of the host (frequency scaling, other
    tenants) evenly over the points instead of biasing whichever ran last.
    """
    prepared = [_prepare(cfg, graph) for cfg in configs]
    times: list[list[float]] = [[] for _ in configs]
    results = [None] * len(configs)
    for g, spec in prepared:
        run_query(g, spec)  # warm the per-graph block caches
    repeats = max(cfg.repeats for cfg in configs)
    for _ in range(repeats):
        for i, (cfg, (g, spec)) in enumerate(zip(configs, prepared)):
            if len(times[i]) >= cfg.repeats:
                continue
            t0 = time.perf_counter()
            results[i] = run_query(g, spec, threads=cfg.threads)
            times[i].append(time.perf_counter() - t0)
    points = []
    for cfg, (g, _), result, ts in zip(configs, prepared, results, times):
        point = BenchPoint(
            sweep=sweep,
            nodes=cfg.nodes,
            degree=cfg.degree,
            score_length=cfg.score_length,
            edges=g.num_edges,
            candidates=len(result.candidates),
            median_seconds=statistics.median(ts),
            max_mos=max(result.scores, default=0.0),
            times=ts,
        )
        points.append(point)
        if progress:
            progress(point)
    return points


def run_point(cfg: BenchConfig, sweep: str = "point", graph: HeteroGraph | None = None) -> BenchPoint:
    """Time the pipeline on one configuration."""
    return _measure([cfg], sweep, graph)[0]


def degree_sweep(
    base: BenchConfig,
    degrees: Sequence[float] = DEFAULT_DEGREES,
    progress: Callable[[BenchPoint], None] | None = None,
) -> list[BenchPoint]:
    """Expected degrees at a fixed node count; each point gets its own graph."""
    return _measure([replace(base, degree=k) for k in degrees], "degree", progress=progress)


def length_sweep(
    base: BenchConfig,
    lengths: Sequence[int] = DEFAULT_LENGTHS,
    progress: Callable[[BenchPoint], None] | None = None,
) -> list[BenchPoint]:
    """Score-path lengths on one graph; candidates stay fixed across points."""
    return _measure(
        [replace(base, score_length=n) for n in lengths], "length", _graph(base), progress
    )


COLUMNS = ("sweep", "nodes", "degree", "score_length", "edges", "candidates", "median_seconds", "max_mos")


def format_bench(points: Sequence[BenchPoint], base: BenchConfig, fmt: str = "tsv") -> str:
    if fmt == "json":
        doc = {
            "seed": base.seed,
            "config": asdict(base),
            "points": [asdict(p) for p in points],
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [
        f"# seed={base.seed} types={base.types} repeats={base.repeats} "
        f"search_length={base.search_length} pattern_size={base.pattern_size} starts={base.starts}",
        "\t".join(COLUMNS),
    ]
    for p in points:
        lines.append(
            "\t".join(
                (
                    p.sweep,
                    str(p.nodes),
                    f"{p.degree:g}",
                    str(p.score_length),
                    str(p.edges),
                    str(p.candidates),
                    f"{p.median_seconds:.6f}",
                    f"{p.max_mos:.3f}",
                )
            )
        )
    return "\n".join(lines) + "\n"
