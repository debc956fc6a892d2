from __future__ import annotations

import pytest

from hinmotif.bench import BenchConfig, degree_sweep, format_bench, length_sweep, run_point
from hinmotif.query import is_symmetric
from hinmotif.synth import bench_query, chain_pattern, random_hetero_graph, symmetric_score_path


def test_generator_shape_and_seed():
    g = random_hetero_graph(300, 3, 4.0, seed=9)
    assert g.num_nodes == 300
    assert {t: len(g.nodes(t)) for t in g.node_types} == {"t0": 100, "t1": 100, "t2": 100}
    again = random_hetero_graph(300, 3, 4.0, seed=9)
    assert list(g.edges()) == list(again.edges())
    # expected degree 4 -> about 600 edges
    assert 450 < g.num_edges < 750


def test_generator_rejects_infeasible():
    with pytest.raises(ValueError):
        random_hetero_graph(10, 2, 10, seed=0)


def test_score_paths_are_symmetric():
    for n in range(2, 10):
        assert is_symmetric(symmetric_score_path(["t0", "t1"], n))


def test_bench_query_is_valid():
    g = random_hetero_graph(200, 2, 4.0, seed=1)
    spec = bench_query(g, pattern_size=3, search_length=3, score_length=5, seed=1, starts=4)
    assert spec.pattern == chain_pattern(["t0", "t1"], 3)
    assert 1 <= len(spec.start) <= 4
    assert all(len(p) == 5 for p in spec.score_paths)


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(nodes=10, degree=10)
    with pytest.raises(ValueError):
        BenchConfig(repeats=0)
    with pytest.raises(ValueError):
        BenchConfig(score_length=1)


def test_trivial_point_is_fast():
    p = run_point(BenchConfig(nodes=10, degree=3, repeats=1, starts=1))
    assert p.median_seconds < 1.0
    assert len(p.times) == 1


def test_sweeps_and_format():
    base = BenchConfig(nodes=60, degree=3, repeats=2, starts=2)
    pts = degree_sweep(base, [2, 3]) + length_sweep(base, [3, 4])
    assert [p.sweep for p in pts] == ["degree", "degree", "length", "length"]
    assert pts[2].candidates == pts[3].candidates  # same graph and query
    text = format_bench(pts, base)
    assert text.startswith("# seed=0 ")
    assert "median_seconds" in format_bench(pts, base, "json")
