import json
from functools import lru_cache

import pytest
from hypothesis import given

from polyenum.core import (
    BinaryMatrix,
    CapExceeded,
    EmptyMatrix,
    InvalidMatrix,
    LooseBoundingBox,
    NotAPermutationMatrix,
    NotConnected,
    enumerate_permutations,
    enumerate_polyominoes,
    is_polyomino,
    matrix_to_perm,
    perm,
    perm_to_matrix,
    polyomino,
    projections,
    validate_polyomino,
)
from strategies import matrices, permutations, polyominoes


def test_visual_orientation():
    m = BinaryMatrix.from_visual("10/01")
    assert m.rows == (0b10, 0b01)
    assert m[2, 1] == 1 and m[1, 2] == 1 and m[1, 1] == 0
    assert m.visual() == ["10", "01"]


def test_text_and_record_round_trip():
    m = BinaryMatrix.from_text("110\n011\n")
    assert m.to_text() == "110\n011\n"
    assert m.to_record() == {"rows": 2, "cols": 3, "bits": ["110", "011"]}
    assert BinaryMatrix.from_record(json.loads(m.to_json())) == m


def test_bad_matrices():
    with pytest.raises(InvalidMatrix):
        BinaryMatrix.from_text("12")
    with pytest.raises(InvalidMatrix):
        BinaryMatrix.from_visual("10/1")
    with pytest.raises(InvalidMatrix):
        BinaryMatrix.from_record({"rows": 3, "cols": 2, "bits": ["10", "01"]})


def test_polyomino_validation():
    with pytest.raises(EmptyMatrix):
        validate_polyomino(BinaryMatrix.from_visual("00"))
    with pytest.raises(LooseBoundingBox):
        validate_polyomino(BinaryMatrix.from_visual("10/10/00"))
    with pytest.raises(NotConnected):
        validate_polyomino(BinaryMatrix.from_visual("10/01"))
    p = polyomino("110/011")
    assert (p.width, p.height, p.area, p.sp) == (3, 2, 4, 5)


def test_boundary_semi_perimeter():
    assert polyomino("111/101/111").boundary_semi_perimeter == 8
    assert polyomino("11/11").boundary_semi_perimeter == 4


@pytest.mark.parametrize("area,count", [(1, 1), (2, 2), (3, 6), (4, 19), (5, 63), (6, 216)])
def test_counts_by_area(area, count):
    assert sum(1 for _ in enumerate_polyominoes(area=area)) == count


@pytest.mark.parametrize("sp", [2, 3, 4, 5, 6])
def test_methods_agree_by_sp(sp):
    a = list(enumerate_polyominoes(sp=sp, method="growth"))
    b = list(enumerate_polyominoes(sp=sp, method="rows"))
    assert a == b == sorted(a)


def test_caps():
    with pytest.raises(CapExceeded):
        list(enumerate_polyominoes(area=15))
    with pytest.raises(CapExceeded):
        list(enumerate_permutations(11))


def test_permutation_matrix():
    p = perm("231")
    m = perm_to_matrix(p)
    assert m.visual() == ["010", "100", "001"]
    assert matrix_to_perm(m) == p
    with pytest.raises(NotAPermutationMatrix):
        matrix_to_perm(BinaryMatrix.from_visual("11/00"))
    with pytest.raises(ValueError):
        perm("113")


def test_projections():
    assert projections(BinaryMatrix.from_visual("10/11")) == ((2, 1), (2, 1))


@given(matrices())
def test_record_round_trip_property(m):
    assert BinaryMatrix.from_record(m.to_record()) == m
    assert BinaryMatrix.from_text(m.to_text()) == m
    assert m.transpose().transpose() == m


@lru_cache(maxsize=None)
def _by_area(n):
    return frozenset(enumerate_polyominoes(area=n))


@given(polyominoes(max_cells=7))
def test_random_polyominoes_are_enumerated(p):
    assert p in _by_area(p.area)
    assert is_polyomino(p.matrix)


@given(permutations())
def test_perm_matrix_round_trip(p):
    assert matrix_to_perm(perm_to_matrix(p)) == p
    assert perm_to_matrix(p.inverse()) == perm_to_matrix(p).transpose()
