from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyenum.series import (
    ConstantTermNotZero,
    NonInvertibleConstantTerm,
    NonSquareConstantTerm,
    Series,
    UnknownFamily,
    catalan,
    closed_A,
    family_series,
    fib_identities,
    fib_poly,
    geometric,
    gf1_corrected,
    gf1_printed,
    gf2_printed,
    gf_exact_degree,
    gf_k_parallelogram,
    recurrence_A,
)

N = 12
coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=N + 1)


def test_geometric_inverse():
    x = Series.gen(N)
    assert 1 / (1 - x) == geometric(N)


def test_sqrt_of_square():
    x = Series.gen(N)
    s = (1 + 2 * x) ** 2
    assert s.sqrt() == 1 + 2 * x


def test_errors():
    x = Series.gen(N)
    with pytest.raises(NonInvertibleConstantTerm):
        x.inverse()
    with pytest.raises(NonSquareConstantTerm):
        x.sqrt()
    with pytest.raises(ConstantTermNotZero):
        x.compose(1 + x)
    with pytest.raises(UnknownFamily):
        family_series("spiral", 5)


def test_csv():
    assert catalan(3).to_csv() == "0,1,1\n1,1,1\n2,2,1\n3,5,1\n"


def test_family_series_prefixes():
    assert [family_series("convex", 9)[n] for n in range(2, 10)] == [1, 2, 7, 28, 120, 528, 2344, 10416]
    assert family_series("convex", 14, "closed") == family_series("convex", 14, "delest-viennot")
    assert family_series("convex", 8, "printed") != family_series("convex", 8)
    assert [family_series("directedConvex", 7)[n] for n in range(2, 8)] == [1, 2, 6, 20, 70, 252]
    assert [family_series("columnConvex", 7)[n] for n in range(2, 8)] == [1, 2, 7, 28, 122, 558]
    assert [family_series("lConvex", 7)[n] for n in range(2, 8)] == [1, 2, 7, 24, 82, 280]
    assert [family_series("stack", 6)[n] for n in range(2, 7)] == [1, 2, 5, 13, 34]


def test_parallelogram_is_catalan():
    s = family_series("parallelogram", 15)
    c = catalan(15)
    assert all(s[n] == c[n - 1] for n in range(2, 16))


def test_gf1_and_gf2():
    g1 = gf_exact_degree(1, 12)
    assert [g1[n] for n in range(4, 8)] == [3, 10, 25, 56]
    assert g1 == gf1_corrected(12)
    assert gf1_printed(12)[4] == -3
    assert gf_exact_degree(2, 14) == gf2_printed(14)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_exact_degree_methods_agree(k):
    d = gf_exact_degree(k, 18, "difference")
    assert d == gf_exact_degree(k, 18, "recurrence")
    assert d == gf_exact_degree(k, 18, "closed")


@pytest.mark.parametrize("k", [2, 3, 4])
def test_closed_A_matches_recurrence(k):
    assert closed_A(k, 10) == recurrence_A(k, 10)


def test_closed_A_fails_at_one():
    assert closed_A(1, 10) != recurrence_A(1, 10)


def test_p_k_tends_to_catalan():
    par = family_series("parallelogram", 16)
    for k in range(5):
        pk = gf_k_parallelogram(k, 16)
        assert all(pk[n] == par[n] for n in range(2, k + 4))


def test_fibonacci_identities():
    rep = fib_identities(10)
    assert rep["catalan"] and not rep["catalan_printed"]
    assert fib_poly(3).at(Fraction(1, 4), Fraction(1, 4)) == Fraction(1, 2)


@given(coeffs, coeffs)
def test_ring_laws(a, b):
    s, t = Series(a, N), Series(b, N)
    assert s * t == t * s
    assert (s + t) - t == s
    if t[0] != 0:
        assert (s / t) * t == s


@given(coeffs)
def test_compose_with_identity(a):
    s = Series(a, N)
    assert s.compose(Series.gen(N)) == s
