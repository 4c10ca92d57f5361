"""One test per acceptance criterion, at the stated bounds and exact equality.

Two claims do not hold as stated and are kept as strict expected failures:
the injections p-basis has sixteen elements rather than twelve, and the
block construction into C' does not produce polyominoes.
"""
import pytest


def _assert_parts(result, skip=()):
    bad = [k for k, v in result.parts.items() if not v and k not in skip]
    assert not bad, (bad, result.counterexample)


def test_criterion_01_family_counts(criterion):
    _assert_parts(criterion(1, "family-counts"))


def test_criterion_02_kparallelogram(criterion):
    r = criterion(2, "kparallelogram")
    _assert_parts(r)
    assert {f"P_{k}" for k in range(5)} <= set(r.parts)


def test_criterion_03_gf1_coefficients(criterion):
    r = criterion(3, "gf1")
    assert r.parts["coefficients_4_to_7"]
    assert r.parts["corrected_form"]


def test_criterion_03_printed_gf1_sign_differs(criterion):
    assert criterion(3, "gf1").parts["printed_sign_flipped"]


def test_criterion_04_fibonacci(criterion):
    r = criterion(4, "fibonacci")
    _assert_parts(r)
    assert r.parts["catalan_identity"] and r.parts["printed_catalan_fails"]


def test_criterion_05_trees(criterion):
    _assert_parts(criterion(5, "trees"))


def test_criterion_06_perm_patterns(criterion):
    _assert_parts(criterion(6, "perm-patterns"))


def test_criterion_07_characterizations(criterion):
    r = criterion(7, "class-characterizations")
    _assert_parts(r)
    assert {"convex", "directedConvex", "parallelogram", "lConvex", "ryser", "two_convex"} <= set(r.parts)


def test_criterion_08_bases_except_injection_count(criterion):
    _assert_parts(criterion(8, "bases"), skip={"injections_p_basis_size"})


@pytest.mark.xfail(strict=True, reason="the injections p-basis has 16 elements; 4 staircases are missing from the count of 12")
def test_criterion_08_injection_basis_has_twelve(criterion):
    r = criterion(8, "bases")
    assert len(r.details["injections_p_basis"]) == 12


def test_criterion_08_injection_basis_actual(criterion):
    basis = criterion(8, "bases").details["injections_p_basis"]
    assert len(basis) == 16
    staircases = [["001", "011", "110"], ["011", "110", "100"], ["100", "110", "011"], ["110", "011", "001"]]
    assert all(s in basis for s in staircases)


def test_criterion_09_perm_classes(criterion):
    _assert_parts(criterion(9, "perm-classes"))


def test_criterion_10_polyomino_counts(criterion):
    r = criterion(10, "polyomino-counts")
    _assert_parts(r)
    assert r.details["counts"] == [1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446]


@pytest.mark.xfail(strict=True, reason="the block images are not all polyominoes (m = 1 and 312 fail)")
def test_criterion_11_cprime_injection(criterion):
    _assert_parts(criterion(11, "cprime"))
