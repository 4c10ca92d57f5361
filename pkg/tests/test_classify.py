import pytest
from hypothesis import given, settings

from polyenum.classify import (
    NotConvex,
    UnknownFamily,
    convexity_degree,
    exhaustive_min_changes,
    family_predicate,
    is_convex,
    is_directed,
    is_ferrer,
    is_l_convex,
    is_l_convex_by_rectangles,
    is_parallelogram,
    is_stack,
    maximal_rectangles,
    members,
    members_by_boundary,
    pair_changes,
)
from polyenum.core import enumerate_polyominoes, polyomino
from strategies import polyominoes


def test_predicates_on_examples():
    cross = polyomino("010/111/010")
    assert is_convex(cross) and not is_directed(cross)
    assert convexity_degree(cross) == 1
    assert convexity_degree(polyomino("001/111/100")) == 2
    assert convexity_degree(polyomino("0011/0111/1110/1100")) == 3
    assert is_parallelogram(polyomino("011/111/110"))
    assert is_stack(polyomino("010/111")) and not is_ferrer(polyomino("010/111"))
    assert is_ferrer(polyomino("100/110/111"))
    assert not is_convex(polyomino("101/111"))


def test_degree_refuses_non_convex():
    with pytest.raises(NotConvex):
        convexity_degree(polyomino("101/111"))


def test_family_lookup():
    assert family_predicate("l-convex") is is_l_convex
    assert family_predicate("kconvex:1")(polyomino("11/01"))
    with pytest.raises(UnknownFamily):
        family_predicate("spiral")


@pytest.mark.parametrize("family,counts", [
    ("convex", [1, 2, 7, 28, 120]),
    ("directedConvex", [1, 2, 6, 20, 70]),
    ("parallelogram", [1, 2, 5, 14, 42]),
    ("lConvex", [1, 2, 7, 24, 82]),
    ("ferrer", [1, 2, 4, 8, 16]),
])
def test_family_counts(family, counts):
    assert [len(members(family, sp)) for sp in range(2, 7)] == counts


def test_column_convex_by_boundary():
    assert [len(members_by_boundary("columnConvex", n)) for n in range(2, 7)] == [1, 2, 7, 28, 122]


def test_pruned_members_match_filter():
    for sp in range(2, 7):
        for fam in ("convex", "parallelogram", "directedConvex"):
            pred = family_predicate(fam)
            assert members(fam, sp) == [p for p in enumerate_polyominoes(sp=sp) if pred(p)]


def test_maximal_rectangles_of_l_shape():
    assert maximal_rectangles(polyomino("10/11")) == [(0, 0, 0, 1), (0, 1, 0, 0)]


@settings(max_examples=60)
@given(polyominoes(max_cells=8))
def test_greedy_degree_matches_bfs(p):
    if not is_convex(p):
        return
    cells = sorted(p.cells)
    for a in cells:
        for b in cells:
            assert pair_changes(p, a, b) == exhaustive_min_changes(p, a, b)


@given(polyominoes(max_cells=9))
def test_l_convex_two_ways(p):
    assert is_l_convex(p) == is_l_convex_by_rectangles(p)
