import pytest
from hypothesis import given

from polyenum.classify import members
from polyenum.core import CapExceeded, polyomino
from polyenum.kparallel import classify_kpar, degree
from polyenum.trees import (
    MalformedTree,
    PlantedPlaneTree,
    class_from_tree,
    count_trees,
    count_trees_exact,
    degree_from_tree,
    enumerate_trees,
    from_tree,
    join_pair,
    pair_count,
    split_pair,
    to_tree,
    tree_labels,
)
from strategies import parallelograms


def test_parse_and_print():
    t = PlantedPlaneTree.parse("(()(()))")
    assert str(t) == "(()(()))"
    assert (t.size, t.height) == (4, 3)
    for bad in ("(()", "())", "()()", "(x)", ""):
        with pytest.raises(MalformedTree):
            PlantedPlaneTree.parse(bad)


def test_labels_alternate_by_depth():
    labels = tree_labels(PlantedPlaneTree.parse("((())())"))
    assert str(labels[()]) == "1"
    assert labels[(0,)].barred and labels[(1,)].barred
    assert not labels[(0, 0)].barred


def test_single_cell_and_bar():
    assert str(to_tree(polyomino("1"))) == "(())"
    with pytest.raises(MalformedTree):
        from_tree(PlantedPlaneTree.parse("()"))


def test_counts():
    assert [sum(1 for _ in enumerate_trees(n)) for n in range(1, 8)] == [1, 1, 2, 5, 14, 42, 132]
    assert count_trees_exact(6, 5) == 7
    assert count_trees(6, 6) == 42
    with pytest.raises(CapExceeded):
        count_trees(17, 3)


def test_bijection_is_onto_trees():
    for n in range(2, 9):
        assert {to_tree(p) for p in members("parallelogram", n)} == set(enumerate_trees(n))


def test_pair_count_small():
    # degree <= 0 gives bars only: 2 per size from 3 on, 1 at size 2
    assert [pair_count(n, 0) for n in range(2, 7)] == [1, 2, 2, 2, 2]


@given(parallelograms())
def test_round_trip_and_statistics(p):
    t = to_tree(p)
    assert from_tree(t) == p
    assert t.size == p.sp
    assert t.height <= degree(p) + 3
    assert degree_from_tree(t) == degree(p)
    if degree(p):
        assert class_from_tree(t) == classify_kpar(p)[0]


@given(parallelograms(min_sp=3))
def test_split_join(p):
    t = to_tree(p)
    assert join_pair(*split_pair(t)) == t
