"""Hypothesis strategies shared by the property tests."""
from hypothesis import strategies as st

from polyenum.core import BinaryMatrix, Permutation, validate_polyomino
from polyenum.classify import members


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    h = draw(st.integers(1, max_rows))
    w = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << w) - 1), min_size=h, max_size=h))
    return BinaryMatrix(h, w, tuple(rows))


@st.composite
def polyominoes(draw, max_cells=9):
    """Grow from one cell by adding frontier cells, then normalize."""
    n = draw(st.integers(1, max_cells))
    cells = {(0, 0)}
    while len(cells) < n:
        frontier = sorted(
            {(x + dx, y + dy) for x, y in cells for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))} - cells
        )
        cells.add(frontier[draw(st.integers(0, len(frontier) - 1))])
    return validate_polyomino(BinaryMatrix.from_cells(cells))


def permutations(max_n=7):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(lambda v: Permutation(tuple(v)))
    )


_PARS = {sp: members("parallelogram", sp) for sp in range(2, 10)}


def parallelograms(min_sp=2, max_sp=9):
    return st.integers(min_sp, max_sp).flatmap(lambda sp: st.sampled_from(_PARS[sp]))
