"""Property-based checks of the engine invariants on seeded random graphs."""

from __future__ import annotations

import io
import math

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from hinmotif.graph import filter_high_degree
from hinmotif.ingest import dumps_edge_list, load_edge_list
from hinmotif.motifs import expand_from
from hinmotif.oracle import naive_match, oracle_pair_counts
from hinmotif.paths import count_symmetric_paths, reachable_nodes
from hinmotif.query import MetaPath, Metric, first_half, is_symmetric, parse_query, serialize_query, symmetrize
from hinmotif.scoring import cos_sim, path_sim, rank, score_candidates
from hinmotif.synth import bench_query, random_hetero_graph
from hinmotif.verify import random_symmetric_path

PROFILE = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

def dense_graph(seed: int, n: int = 24, c: int = 2, k: float = 4.0):
    return random_hetero_graph(n, c, k, seed)


type_names = st.lists(st.sampled_from(["a", "b", "c", "d"]), min_size=2, max_size=5)


@PROFILE
@given(type_names)
def test_symmetrize_properties(types):
    p = MetaPath(tuple(types))
    s = symmetrize(p)
    assert is_symmetric(s)
    assert first_half(s).types == p.types
    assert symmetrize(first_half(s)) == s


@PROFILE
@given(st.integers(0, 10_000))
def test_degree_sums_and_round_trip(seed):
    g = dense_graph(seed)
    for v in g.nodes():
        assert sum(len(g.neighbors_by_type(v, t)) for t in g.node_types) == g.degree(v)
    again = load_edge_list(io.StringIO(dumps_edge_list(g)))
    assert again.num_edges == g.num_edges
    assert sorted(again.nodes()) == sorted(n for n in g.nodes() if g.degree(n) > 0)


@PROFILE
@given(st.integers(0, 10_000), st.integers(0, 6))
def test_filter_idempotent(seed, threshold):
    g = dense_graph(seed)
    thr = {"t0": threshold}
    once = filter_high_degree(g, thr)
    twice = filter_high_degree(once, thr)
    assert sorted(once.nodes()) == sorted(twice.nodes())
    assert once.num_edges == twice.num_edges
    assert all(g.degree(v) <= threshold for v in once.nodes("t0"))


@PROFILE
@given(st.integers(0, 10_000), st.sampled_from([3, 4, 5, 6, 7]))
def test_counts_match_oracle_and_transpose(seed, length):
    rng = np.random.default_rng(seed)
    g = dense_graph(seed, c=int(rng.integers(2, 4)))
    path = random_symmetric_path(rng, list(g.node_types), length)
    pool = g.nodes(path.start_type)
    cands = [n for n in pool if rng.random() < 0.6] or pool[:1]
    refs = [n for n in pool if rng.random() < 0.6] or pool[-1:]
    counts = count_symmetric_paths(g, path, cands, refs)
    a2b, a2a, b2b = oracle_pair_counts(g, path, cands, refs)
    assert counts.a2b_dict() == a2b and counts.a2a_dict() == a2a and counts.b2b_dict() == b2b
    swapped = count_symmetric_paths(g, path, refs, cands)
    assert (swapped.a2b.toarray() == counts.a2b.toarray().T).all()
    assert (counts.a2a.toarray() == counts.a2a.toarray().T).all()


@PROFILE
@given(st.integers(0, 10_000))
def test_node_similarity_ranges(seed):
    g = dense_graph(seed)
    path = MetaPath(("t0", "t1", "t0"))
    nodes = g.nodes("t0")
    counts = count_symmetric_paths(g, path, nodes, nodes)
    reach = reachable_nodes(g, nodes, path.half())
    for x in nodes[:6]:
        for y in nodes[:6]:
            ps, cs = path_sim(x, y, counts), cos_sim(x, y, reach)
            assert 0.0 <= ps <= 1.0 and 0.0 <= cs <= 1.0 + 1e-12
            assert ps == path_sim(y, x, counts)
            assert math.isclose(cs, cos_sim(y, x, reach), rel_tol=1e-12)
        if counts.count(x, x):
            assert path_sim(x, x, counts) == 1.0
            assert math.isclose(cos_sim(x, x, reach), 1.0, rel_tol=1e-12)


def _query_setup(seed: int, pattern_size: int = 2):
    g = random_hetero_graph(40, 2, 4.0, seed)
    spec = bench_query(g, pattern_size=pattern_size, search_length=3, score_length=3, seed=seed, starts=2)
    cands = list(expand_from(g, spec.start, spec.search_paths, spec.pattern))
    counts = []
    for p in spec.score_paths:
        nodes = list(dict.fromkeys(n for m in cands for n in m.nodes_of_type(p.end_type)))
        counts.append(count_symmetric_paths(g, p, nodes, nodes))
    return g, spec, cands, counts


@PROFILE
@given(st.integers(0, 10_000), st.floats(0.0, 1.0))
def test_mos_additivity(seed, split):
    g, spec, cands, counts = _query_setup(seed)
    cut = int(split * len(cands))
    s1, s2 = cands[:cut], cands[cut:]
    raw = lambda refs: score_candidates(cands, refs, counts, spec.score_paths)  # noqa: E731
    assert raw(cands) == [a + b for a, b in zip(raw(s1), raw(s2))]
    for metric in (Metric.PATHSIM, Metric.COSSIM, Metric.NORMCON):
        f = lambda refs: score_candidates(cands, refs, counts, spec.score_paths, metric)  # noqa: E731
        for u, a, b in zip(f(cands), f(s1), f(s2)):
            assert math.isclose(u, a + b, rel_tol=1e-12, abs_tol=1e-12)


@PROFILE
@given(st.integers(0, 10_000), st.sampled_from([0.5, 3.0, 7.25]))
def test_scale_covariance(seed, lam):
    g, spec, cands, counts = _query_setup(seed)
    scaled = [MetaPath(p.types, p.edge_types, p.weight * lam) for p in spec.score_paths]
    base = score_candidates(cands, cands, counts, spec.score_paths)
    new = score_candidates(cands, cands, counts, scaled)
    for a, b in zip(base, new):
        assert math.isclose(b, lam * a, rel_tol=1e-12)
    assert rank(cands, base).instances == rank(cands, new).instances


@PROFILE
@given(st.integers(0, 10_000), st.randoms(use_true_random=False))
def test_rank_independent_of_input_order(seed, rnd):
    g, spec, cands, counts = _query_setup(seed)
    scores = score_candidates(cands, cands, counts, spec.score_paths)
    order = list(range(len(cands)))
    rnd.shuffle(order)
    shuffled = rank([cands[i] for i in order], [scores[i] for i in order])
    assert shuffled.instances == rank(cands, scores).instances


@PROFILE
@given(st.integers(0, 10_000), st.randoms(use_true_random=False))
def test_expansion_order_independent_and_deduped(seed, rnd):
    g = random_hetero_graph(30, 2, 3.0, seed)
    spec = bench_query(g, pattern_size=3, search_length=3, score_length=3, seed=seed, starts=3)
    paths = list(spec.search_paths) + [MetaPath(("t1", "t0"))]
    a = expand_from(g, spec.start, paths, spec.pattern)
    starts, shuffled = list(spec.start), list(paths)
    rnd.shuffle(starts)
    rnd.shuffle(shuffled)
    b = expand_from(g, starts, shuffled, spec.pattern)
    assert sorted(a.keys()) == sorted(b.keys())
    assert len(set(a.keys())) == len(a)
    valid = {m.key for m in naive_match(g, spec.pattern)}
    assert set(a.keys()) <= valid
    for s in spec.start:
        assert min(s, tuple(reversed(s))) in set(a.keys())


@PROFILE
@given(st.integers(0, 10_000), st.sampled_from(list(Metric)), st.integers(1, 50))
def test_query_round_trip(seed, metric, top_k):
    g = random_hetero_graph(30, 2, 3.0, seed)
    spec = bench_query(g, pattern_size=2, search_length=3, score_length=5, seed=seed, metric=metric)
    spec = spec.with_overrides(top_k=top_k, degree_thresholds={"t0": seed % 7})
    assert parse_query(serialize_query(spec)) == spec
