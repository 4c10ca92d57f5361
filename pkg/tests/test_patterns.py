import pytest
from hypothesis import given, settings

from polyenum.classify import convexity_degree, is_convex
from polyenum.core import BinaryMatrix, perm, perm_to_matrix, polyomino
from polyenum.patterns import (
    NAMED,
    GenPattern,
    MeshPattern,
    PatternSyntaxError,
    avoids_all,
    contains,
    contains_submatrix,
    format_patterns,
    gen_pattern_match,
    marcus_tardos_contains,
    parse_patterns,
    perm_contains,
    perm_occurrences,
    perm_to_cprime,
    uniquely_determined,
    verify_characterization,
    vincular,
    z_patterns,
)
from strategies import matrices, permutations, polyominoes


def _brute_contains(m: BinaryMatrix, q: BinaryMatrix) -> bool:
    from itertools import combinations

    return any(
        m.submatrix(rs, cs) == q
        for rs in combinations(range(m.nrows), q.nrows)
        for cs in combinations(range(m.ncols), q.ncols)
    )


def test_witness_is_a_submatrix():
    m = polyomino("111/101/111").matrix
    rows, cols = contains_submatrix(m, NAMED["H"])
    assert m.submatrix(rows, cols) == NAMED["H"]
    assert contains_submatrix(polyomino("11/11").matrix, NAMED["H"]) is None


def test_named_examples():
    assert contains(polyomino("101/111").matrix, NAMED["H"])
    assert not avoids_all(polyomino("110/011").matrix, [NAMED["S1"], NAMED["S2"]])
    assert avoids_all(polyomino("11/11").matrix, [NAMED["S1"], NAMED["S2"]])


def test_perm_examples():
    assert perm_contains(perm("24531"), perm("231"))
    assert not perm_contains(perm("51423"), perm("231"))
    assert perm_occurrences(perm("3542617"), "12-3-4") == [(3, 5, 6, 7)]
    assert vincular("12-3-4").X == frozenset({1})
    mesh = MeshPattern(perm("3142"), frozenset({(0, 2), (1, 4), (4, 2)}))
    occ = mesh.occurrences(perm("425163"))
    assert (5, 1, 6, 3) not in occ and (4, 2, 5, 3) in occ
    with pytest.raises(PatternSyntaxError):
        MeshPattern(perm("12"), frozenset({(3, 0)}))


def test_gen_pattern_parse_and_text():
    g = GenPattern.parse("borders:W\n1|0\n---\n*1")
    assert g.col_bars == frozenset({0, 1}) and g.row_bars == frozenset({1})
    assert GenPattern.parse(g.to_text()) == g
    with pytest.raises(PatternSyntaxError):
        GenPattern.parse("1x0")
    with pytest.raises(PatternSyntaxError):
        GenPattern.parse("10\n1")


def test_adjacency_bar_requires_neighbours():
    g = GenPattern.parse("1|1")
    assert gen_pattern_match(BinaryMatrix.from_visual("11"), g)
    assert not gen_pattern_match(BinaryMatrix.from_visual("101"), g)
    assert contains(BinaryMatrix.from_visual("101"), GenPattern.parse("11"))
    # a star matches either entry
    assert contains(BinaryMatrix.from_visual("10"), GenPattern.parse("1*"))


def test_border_bars():
    west = GenPattern.parse("|1")
    assert gen_pattern_match(BinaryMatrix.from_visual("10"), west)
    assert not gen_pattern_match(BinaryMatrix.from_visual("01"), west)


def test_z_patterns_are_rotations():
    zs = z_patterns()
    # Z2 is invariant under a half turn
    assert len(zs) == 6
    assert {g.rotate() for g in zs} == set(zs)


def test_pattern_file_round_trip():
    text = "# basis\nperm:123\nperm:231\n\n101\n\nborders:N\n0|*1\n----\n*|10\n1|00\n\nvincular:12-3-4\n"
    pats = parse_patterns(text)
    assert pats[0] == perm("123") and pats[2] == NAMED["H"]
    assert isinstance(pats[3], GenPattern)
    assert parse_patterns(format_patterns(pats[:4])) == pats[:4]
    with pytest.raises(PatternSyntaxError):
        parse_patterns("perm:113")


def test_ryser_example():
    assert not uniquely_determined(NAMED["S1"])
    assert uniquely_determined(BinaryMatrix.from_visual("11/01"))


def test_cprime_blocks():
    q = perm_to_cprime(perm("12"))
    assert (q.nrows, q.ncols) == (4, 4)
    assert q.ones == 4 * 4 - 4 * 2 + 2


@pytest.mark.parametrize("tag", ["lPolyomino", "cPrime", "rectHoles"])
def test_further_characterizations(tag):
    assert verify_characterization(tag, 7) == (True, None)


def test_missing_pattern_breaks_characterization():
    ok, cex = verify_characterization("convex", 6, [NAMED["H"]])
    assert not ok and not is_convex(cex)


@settings(max_examples=200)
@given(matrices(4, 5), matrices(2, 3))
def test_engine_matches_brute_force(m, q):
    assert contains(m, q) == _brute_contains(m, q)


@given(permutations(6), permutations(3))
def test_submatrix_is_classical(p, s):
    assert contains(perm_to_matrix(p), perm_to_matrix(s)) == perm_contains(p, s)


@given(permutations(6), permutations(3))
def test_marcus_tardos_of_permutation_is_classical(p, s):
    assert marcus_tardos_contains(p, perm_to_matrix(s)) == perm_contains(p, s)


@given(polyominoes(max_cells=8))
def test_two_convex_on_random(p):
    if is_convex(p):
        assert (convexity_degree(p) <= 2) == avoids_all(p, z_patterns())
