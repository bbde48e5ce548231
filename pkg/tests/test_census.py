import pytest

from permgraph import census as cs
from permgraph.errors import DomainError, ResourceLimitExceeded
from permgraph.perm import all_perms, complement, format_perm, parse_perm
from permgraph.walks import closed_walk_condition

# computed once by exhaustive search and frozen here as regression data
CYCLE_COUNTS = {
    3: [2, 6, 26],
    4: [2, 6, 40],
    5: [2, 8, 56, 342],
    6: [2, 8, 56, 512, 3992],
}
CYCLE_VERTICES = {
    4: [2, 10, 22],
    5: [2, 12, 58, 118],
    6: [2, 14, 118, 348, 718],
}
WALK_CLASSES = {
    3: [2, 8, 28, 64],
    4: [2, 8, 42, 224],
    5: [2, 10, 58, 354],
    6: [2, 10, 58, 524, 3994],
}


def G(n):
    return cs._graph(n, False)


@pytest.mark.parametrize("n", sorted(CYCLE_COUNTS))
def test_cycle_counts_regression(n):
    ks = range(1, len(CYCLE_COUNTS[n]) + 1)
    assert [cs.count_k_cycles(G(n), k) for k in ks] == CYCLE_COUNTS[n]


@pytest.mark.parametrize("n", sorted(CYCLE_VERTICES))
def test_cycle_vertex_regression(n):
    ks = range(1, len(CYCLE_VERTICES[n]) + 1)
    assert [cs.v_count(G(n), k, prune=True) for k in ks] == CYCLE_VERTICES[n]


@pytest.mark.parametrize("n", sorted(WALK_CLASSES))
def test_walk_class_regression(n):
    ks = range(1, len(WALK_CLASSES[n]) + 1)
    assert [cs.count_closed_walk_classes(G(n), k) for k in ks] == WALK_CLASSES[n]


@pytest.mark.parametrize("n", range(3, 7))
def test_pruned_scan_matches_plain(n):
    g = G(n)
    for k in range(1, n):
        plain = cs.enumerate_k_cycles(g, k)
        assert cs.enumerate_k_cycles(g, k, prune=True) == plain
        assert cs.cycle_vertex_set(g, k, prune=True) == cs.cycle_vertex_set(g, k)


@pytest.mark.parametrize("n", range(3, 6))
def test_cycles_are_valid_and_canonical(n):
    g = G(n)
    for k in range(1, n + 1):
        cycles = cs.enumerate_k_cycles(g, k)
        assert len(set(c.key for c in cycles)) == len(cycles)
        for c in cycles:
            c.validate()
            assert c.is_cycle and c.length == k and c == c.canonical()


@pytest.mark.parametrize("n", [4, 5, 6])
def test_parallel_matches_sequential(n):
    g = G(n)
    for k in (2, 3):
        assert cs.enumerate_k_cycles(g, k, workers=3) == cs.enumerate_k_cycles(g, k)
        assert cs.v_count(g, k, workers=2) == cs.v_count(g, k)


def test_limit_raises_with_partial():
    with pytest.raises(ResourceLimitExceeded) as info:
        cs.count_k_cycles(G(6), 5, limit=100)
    assert info.value.partial is not None


@pytest.mark.parametrize("n", range(3, 6))
def test_cycle_classes_closed_under_complement(n):
    g = G(n)
    for k in range(2, n):
        vs = cs.cycle_vertex_set(g, k)
        assert {g.rank(complement(g.vertex(v))) for v in vs} == vs


@pytest.mark.parametrize("n", range(3, 7))
def test_cycle_vertices_are_walk_vertices(n):
    g = G(n)
    for k in range(2, n):
        w = {g.rank(p) for p in all_perms(n) if closed_walk_condition(p, k)}
        assert cs.cycle_vertex_set(g, k) <= w
        assert cs.w_count(n, k) == len(w)


def test_w_regression():
    assert cs.w_count(4, 2) == 12
    assert cs.w_count(5, 3) == 60
    assert cs.w_count(7, 3) == 152
    assert cs.w_count(8, 3) == 188
    assert cs.w_count(9, 3) == 228
    assert cs.w_count(9, 4) == 2244
    assert cs.v_count(G(7), 3) == 150


def test_w_bound_values():
    assert (cs.w_upper_bound(7, 3), cs.w_upper_bound(9, 3), cs.w_upper_bound(9, 4)) == (1750, 5229, 31416)


@pytest.mark.parametrize("fn,args", [
    (cs.w_formula, (7, 3)),
    (cs.w_upper_bound, (8, 3)),
    (cs.w_upper_bound, (7, 2)),
    (cs.v_prime_formula, (6, 4, 100)),
    (cs.two_cycle_vertex_formula, (3,)),
    (cs.two_cycle_count_formula, (3,)),
    (cs.special_two_cycle_vertices, (3,)),
])
def test_formula_domains(fn, args):
    with pytest.raises(DomainError):
        fn(*args)


def test_formulas_small():
    assert [cs.two_cycle_vertex_formula(n) for n in range(4, 9)] == [10, 12, 14, 16, 18]
    assert [cs.two_cycle_count_formula(n) for n in range(4, 9)] == [6, 8, 8, 10, 10]
    assert cs.w_formula(5, 3) == 60


def test_special_vertices_n4_n5():
    sp = cs.special_two_cycle_vertices(4)
    assert [format_perm(p) for p in sp.doubly_covered] == ["1324", "4231"]
    sp = cs.special_two_cycle_vertices(5)
    assert [[format_perm(x) for x in p] for p in sp.multiedge_pairs] == [["31425", "14253"], ["35241", "52413"]]


def test_special_vertices_alternate():
    from permgraph.perm import is_alternating
    for n in range(4, 12):
        sp = cs.special_two_cycle_vertices(n)
        for p in sp.doubly_covered + tuple(x for pair in sp.multiedge_pairs for x in pair):
            assert is_alternating(p)


def test_burnside_matches_enumeration_g5():
    g = G(5)
    for k in (1, 2, 3):
        assert cs.count_closed_walk_classes(g, k) == len(cs.enumerate_closed_walk_classes(g, k))


def test_g3_coexisting_lengths():
    g = G(3)
    assert cs.coexisting_cycle_lengths(g, (1, 2, 3), 6) == {3, 4, 5, 6}
    assert cs.cycles_through(g, (1, 2, 3), 1)  # the loop


def test_g3_three_cycles_on_one_triangle():
    g = G(3)
    tri = {g.rank(parse_perm(x)) for x in ("132", "321", "213")}
    assert sum(set(c.vertex_ranks) == tri for c in cs.enumerate_k_cycles(g, 3)) == 8


def test_example_through_21435_edge_distinguished():
    walks = cs.closed_walks_through(G(5), parse_perm("21435"), 4)
    assert len(walks) == 5
    assert sorted(cs.vertex_sequence_classes(walks).values()) == [1, 1, 1, 2]


def test_census_report_roundtrip():
    rep = cs.census(4, 2)
    assert rep.ok
    assert (rep.cycle_count, rep.vertices_in_cycles, rep.vertices_in_walks) == (6, 10, 12)
    assert cs.CensusReport.from_dict(rep.to_dict()) == rep
    assert "walk_class_count" in rep.unpredicted


def test_census_k_beyond_n():
    rep = cs.census(3, 3)
    assert rep.cycle_count == 26 and rep.agreement["C_G3"]
