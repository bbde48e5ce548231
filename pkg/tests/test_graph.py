from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from permgraph.errors import GraphSizeError
from permgraph.graph import (IMPLICIT_MAX_N, ImplicitOverlapGraph, OverlapGraph, build,
                             double_edge_pair, edge_endpoints, edges_connecting, walk_count_matrix)
from permgraph.perm import all_perms, cyclic_shift, is_trivial, rank
from permgraph.walks import loop_condition, walk_condition


def test_edge_endpoints_example():
    assert edge_endpoints((1, 3, 2, 4)) == ((1, 3, 2), (2, 1, 3))
    with pytest.raises(ValueError):
        edge_endpoints((1, 2))


def test_double_edge_example():
    assert double_edge_pair((1, 2, 3)) == ((1, 3, 4, 2), (2, 3, 4, 1))
    assert edges_connecting((1, 2, 3), (2, 3, 1)) == [(1, 3, 4, 2), (2, 3, 4, 1)]


@pytest.mark.parametrize("n", range(2, 7))
def test_sizes_and_degrees(n):
    g = build(n)
    assert g.vertex_count == factorial(n)
    assert g.edge_count == factorial(n + 1)
    assert all(g.out_degree(v) == n + 1 for v in range(g.vertex_count))
    assert (g.in_degrees() == n + 1).all()


def test_g3_export_shape():
    g = build(3)
    assert (g.vertex_count, g.edge_count) == (6, 24)


@pytest.mark.parametrize("n", range(2, 7))
def test_loops_only_at_trivial_vertices(n):
    g = build(n)
    loops = [g.vertex(v) for v in range(g.vertex_count) if any(h == v for _, h in g.out_edges(v))]
    assert len(loops) == 2 and all(is_trivial(p) for p in loops)
    assert all(loop_condition(p) == is_trivial(p) for p in all_perms(n))


@pytest.mark.parametrize("n", range(3, 7))
def test_multiedges_only_to_shift(n):
    g = build(n)
    for v in range(g.vertex_count):
        heads = [h for _, h in g.out_edges(v)]
        shift = g.rank(cyclic_shift(g.vertex(v)))
        assert heads.count(shift) == 2
        assert len(set(heads)) == n


@pytest.mark.parametrize("n", range(2, 6))
def test_edges_are_consistent(n):
    g = build(n)
    seen = set()
    for eid, t, h in g.edges():
        e = g.edge(eid)
        assert rank(e) == eid
        assert edge_endpoints(e) == (g.vertex(t), g.vertex(h))
        assert (eid, t) in g.in_edges(h)
        seen.add(eid)
    assert seen == set(range(g.edge_count))


@pytest.mark.parametrize("n", range(2, 6))
def test_implicit_matches_eager(n):
    e, i = OverlapGraph(n), ImplicitOverlapGraph(n)
    for v in range(e.vertex_count):
        assert e.out_edges(v) == i.out_edges(v)
        assert sorted(e.in_edges(v)) == sorted(i.in_edges(v))


def test_implicit_large_neighbourhood():
    g = ImplicitOverlapGraph(12)
    a = tuple(range(12, 0, -1))
    outs = g.out_edges(g.rank(a))
    assert len(outs) == 13
    assert any(h == g.rank(a) for _, h in outs)


def test_size_guards():
    with pytest.raises(GraphSizeError):
        OverlapGraph(11)
    with pytest.raises(GraphSizeError):
        ImplicitOverlapGraph(IMPLICIT_MAX_N + 1)
    assert build(9, implicit=True).implicit


@pytest.mark.parametrize("n", range(2, 6))
def test_adjacency_counts_multiplicity(n):
    A = build(n).adjacency_matrix()
    assert A.sum() == factorial(n + 1)
    assert (np.asarray(A.sum(axis=1)).ravel() == n + 1).all()


@pytest.mark.parametrize("n", range(3, 7))
def test_walk_condition_matches_matrix(n):
    g = build(n)
    ps = list(all_perms(n))
    for t in range(1, n):
        R = walk_count_matrix(g, t).toarray() > 0
        # every row up to n=5, every 12th row at n=6
        for a in ps[:: 1 if n <= 5 else 12]:
            row = [walk_condition(a, b, t) for b in ps]
            assert row == R[rank(a)].tolist()


nperms = st.integers(3, 12).flatmap(lambda n: st.tuples(st.permutations(range(1, n + 1)),
                                                      st.permutations(range(1, n + 1))))


@given(nperms)
def test_any_pair_joined_in_n_minus_one_steps(ab):
    a, b = map(tuple, ab)
    assert walk_condition(a, b, len(a) - 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 12).flatmap(lambda n: st.permutations(range(1, n + 2))).map(tuple))
def test_every_edge_satisfies_the_one_step_condition(e):
    a, b = edge_endpoints(e)
    assert walk_condition(a, b, 1)
    assert e in edges_connecting(a, b)
