from __future__ import annotations

import pytest

from hinmotif.errors import GraphError, GraphFrozen, MissingNode, TypeConflict
from hinmotif.graph import HeteroGraph, filter_high_degree


def names(pairs):
    return sorted(n for n, _ in pairs)


def test_construction():
    g = HeteroGraph()
    g.add_node("a1", "author")
    g.add_node("t1", "term")
    g.add_edge("a1", "t1", "writes", 1)
    assert g.num_nodes == 2 and g.num_edges == 1
    assert names(g.neighbors_by_type("a1", "term")) == ["t1"]


def test_missing_node_and_type_conflict():
    g = HeteroGraph()
    g.add_node("a1", "author")
    with pytest.raises(MissingNode):
        g.add_edge("a1", "zz", "writes")
    with pytest.raises(TypeConflict) as info:
        g.add_node("a1", "term")
    assert info.value.node == "a1"
    # re-adding with the same type is a no-op
    assert g.add_node("a1", "author") == "a1"
    assert g.num_nodes == 1


def test_self_loop_rejected():
    g = HeteroGraph()
    g.add_node("a1", "author")
    with pytest.raises(GraphError):
        g.add_edge("a1", "a1", "coauthor")


def test_frozen_graph_is_read_only(g1):
    assert g1.frozen
    with pytest.raises(GraphFrozen):
        g1.add_node("a9", "author")
    with pytest.raises(GraphFrozen):
        g1.add_edge("a1", "a3", "coauthor")


def test_neighbors_by_type_g1(g1):
    assert names(g1.neighbors_by_type("a1", "term")) == ["t1", "t2"]
    assert names(g1.neighbors_by_type("a3", "term")) == ["t3"]
    assert g1.neighbors_by_type("t2", "venue") == []
    with pytest.raises(MissingNode):
        g1.neighbors_by_type("zz", "term")


def test_parallel_edges_keep_multiplicity():
    g = HeteroGraph()
    g.add_node("a", "author")
    g.add_node("t", "term")
    g.add_edge("a", "t", "writes")
    g.add_edge("a", "t", "writes")
    assert g.neighbors_by_type("a", "term") == [("t", 1.0), ("t", 1.0)]
    assert g.degree("a") == 2
    assert g.edge_multiplicity("a", "t") == 2
    assert g.type_block("author", "term").toarray().tolist() == [[2]]


def test_degree_is_sum_of_typed_neighbors(g1):
    for v in g1.nodes():
        assert sum(len(g1.neighbors_by_type(v, t)) for t in g1.node_types) == g1.degree(v)


def test_schema_and_blocks(g1):
    schema = g1.schema()
    assert ("author", "term", "writes") in schema
    assert ("term", "author", "writes") in schema
    assert ("author", "author", "coauthor") in schema
    block = g1.type_block("author", "term").toarray()
    assert block.tolist() == [[1, 1, 0], [1, 0, 1], [0, 0, 1]]
    aa = g1.type_block("author", "author", "coauthor").toarray()
    assert aa.tolist() == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert g1.type_block("author", "term", "coauthor").nnz == 0


def test_filter_term_threshold_one(g1):
    f = filter_high_degree(g1, {"term": 1})
    assert f.nodes("term") == ["t2"]
    assert f.num_edges == 3
    assert g1.num_edges == 7  # input untouched
    assert f.frozen


def test_filter_identity_and_zero_threshold(g1):
    same = filter_high_degree(g1, {})
    assert sorted(same.nodes()) == sorted(g1.nodes())
    assert same.num_edges == g1.num_edges
    none_left = filter_high_degree(g1, {"author": 0})
    assert none_left.nodes("author") == []
    assert none_left.num_edges == 0


def test_filter_is_idempotent_and_uses_original_degrees(g1):
    once = filter_high_degree(g1, {"author": 2})
    twice = filter_high_degree(once, {"author": 2})
    assert sorted(once.nodes()) == sorted(twice.nodes())
    assert once.num_edges == twice.num_edges
    for v in once.nodes():
        if g1.node_type(v) == "author":
            assert g1.degree(v) <= 2
