import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyenum.bases import (
    ClassSpec,
    FinitePoset,
    NotAPartialOrder,
    PatternSet,
    antichain,
    boolean_lattice,
    canonical_m_basis,
    cartesian_product,
    chain,
    condition_rob,
    disjoint_union,
    is_minimal_containing,
    is_robust_singleton,
    leq,
    matrix_poset,
    meet,
    minimal_perms_containing,
    minimal_perms_containing_brute,
    one_step_deletions,
    ordinal_sum,
    p_basis_from_m_basis,
    submatrices,
    with_zero_row_on_top,
)
from polyenum.checks import is_injection
from polyenum.core import BinaryMatrix, perm, perm_to_matrix, polyomino
from polyenum.patterns import NAMED
from strategies import matrices

V = BinaryMatrix.from_visual


def test_submatrix_order():
    assert leq(V("1"), V("10/01"))
    assert not leq(V("11"), V("10/01"))
    assert V("10/01") in submatrices(V("10/01"))
    assert V("10/01") not in submatrices(V("10/01"), proper=True)
    assert one_step_deletions(V("10/01")) == {V("1/0"), V("0/1"), V("10"), V("01")}


def test_p_basis_of_permutation_classes():
    res = p_basis_from_m_basis([NAMED["Q1"]], "perms", name="A")
    assert sorted(str(p) for p in res.basis) == ["231", "312", "321"]
    assert res.complete
    assert sorted(str(p) for p in minimal_perms_containing(NAMED["MF"])) == ["123", "132", "213"]


def test_basis_report_json():
    res = p_basis_from_m_basis([NAMED["00"], NAMED["0;0"]], "polyominoes", 5, "injections")
    assert res.to_json().startswith('{"class":"injections","bound":5,"complete":false,"basis":[')


@settings(max_examples=40, deadline=None)
@given(matrices(3, 3))
def test_constructive_minimal_perms(q):
    if q.is_quasi_permutation():
        assert sorted(minimal_perms_containing(q)) == sorted(minimal_perms_containing_brute(q))


def test_canonical_m_basis_of_vertical_bars():
    spec = ClassSpec("V", "polyominoes", lambda p: p.width == 1, 6)
    assert sorted(canonical_m_basis(spec, 3).basis) == sorted([V("0"), V("11")])


def test_meet_is_a_set():
    assert sorted(meet(NAMED["M1"], NAMED["M2"])) == sorted([V("0"), V("11"), V("1/1")])


def test_robustness_helpers():
    assert is_robust_singleton(V("11"))
    assert not is_robust_singleton(V("0"))
    # the sufficient condition does not hold for the parallelogram pair
    assert condition_rob(NAMED["M1"], NAMED["M2"]) is False


def test_minimal_containing():
    assert is_minimal_containing(polyomino("101/111"), NAMED["H"])
    assert not is_minimal_containing(polyomino("101/111/111"), NAMED["H"])
    assert is_injection(polyomino("110/111")) and not is_injection(polyomino("100/111"))


def test_zero_row_on_top():
    m = with_zero_row_on_top(perm_to_matrix(perm("12")))
    assert m.visual() == ["00", "01", "10"]


def test_pattern_set_antichain():
    assert PatternSet.of([NAMED["M1"], NAMED["M2"]]).is_antichain
    assert not PatternSet.of([V("1"), V("11")]).is_antichain


def test_poset_basics():
    b3 = boolean_lattice(3)
    assert len(b3.covers()) == 12
    assert chain(5).linear_extension_count() == 1
    assert antichain(5).linear_extension_count() == 120
    assert b3.minimal() == [frozenset()] and b3.maximal() == [frozenset({1, 2, 3})]
    assert b3.filter([frozenset({1, 2})]) == [frozenset({1, 2, 3})]
    assert b3.ideal([frozenset({1})]) == [frozenset()]
    assert b3.is_antichain([frozenset({1}), frozenset({2})])
    with pytest.raises(NotAPartialOrder):
        FinitePoset.from_relation([0, 1], lambda a, b: True)


def test_poset_combinators():
    assert len(disjoint_union(chain(2), chain(3))) == 5
    assert disjoint_union(chain(2), chain(3)).linear_extension_count() == 10
    assert ordinal_sum(antichain(2), antichain(2)).linear_extension_count() == 4
    assert len(cartesian_product(chain(2), chain(2)).covers()) == 4
    assert cartesian_product(chain(2), chain(3)).linear_extension_count() == 5


def test_matrix_poset():
    p = matrix_poset([V("1"), V("11"), V("1/1"), V("10/01")])
    assert p.minimal() == [V("1")]
    assert len(p.maximal()) == 3


@given(st.integers(0, 6), st.integers(0, 6))
def test_disjoint_union_extensions(a, b):
    from math import comb

    assert disjoint_union(chain(a), chain(b)).linear_extension_count() == comb(a + b, a)
