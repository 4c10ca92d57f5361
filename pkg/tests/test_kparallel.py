import json

import pytest
from hypothesis import given

from polyenum.classify import convexity_degree, members
from polyenum.core import polyomino
from polyenum.kparallel import (
    Decomposition,
    DegreeZero,
    InvalidDecomposition,
    NotParallelogram,
    check_decomposition,
    classify_kpar,
    decompose,
    degree,
    extend_degree,
    path_h,
    path_v,
    recompose,
)
from strategies import parallelograms


def test_paths_of_a_staircase():
    p = polyomino("011/111/110")
    assert path_v(p).steps[0] == "n" and path_h(p).steps[0] == "e"
    assert degree(p) == convexity_degree(p)


def test_refusals():
    with pytest.raises(NotParallelogram):
        degree(polyomino("010/111"))
    with pytest.raises(DegreeZero):
        classify_kpar(polyomino("111"))
    with pytest.raises(DegreeZero):
        decompose(polyomino("1"))


def test_class_counts_are_symmetric():
    # transposition swaps up and right
    for sp in range(3, 9):
        tally = {}
        for p in members("parallelogram", sp):
            if degree(p):
                cls, _ = classify_kpar(p)
                tally[cls] = tally.get(cls, 0) + 1
        assert tally.get("up", 0) == tally.get("right", 0)


def test_decomposition_record_round_trip():
    d = decompose(polyomino("011/111/110"))
    assert Decomposition.from_record(json.loads(d.to_json())) == d


def test_invalid_decomposition():
    with pytest.raises(InvalidDecomposition):
        check_decomposition(Decomposition(1, ("n",), ("n",)))


def test_extension_reaches_every_degree_two():
    sp_max = 8
    ones = [decompose(p) for sp in range(2, sp_max + 1) for p in members("parallelogram", sp) if degree(p) == 1]
    built = set()
    for d in ones:
        for e in extend_degree(d, sp_max):
            try:
                built.add(recompose(e))
            except InvalidDecomposition:
                pass
    want = {p for sp in range(2, sp_max + 1) for p in members("parallelogram", sp) if degree(p) == 2}
    assert built == want


@given(parallelograms())
def test_degree_matches_general_degree(p):
    assert degree(p) == convexity_degree(p)


@given(parallelograms(min_sp=3))
def test_decompose_recompose(p):
    if degree(p) == 0:
        return
    d = decompose(p)
    check_decomposition(d)
    assert len(d.alphas) == len(d.betas) == d.k
    assert recompose(d) == p
