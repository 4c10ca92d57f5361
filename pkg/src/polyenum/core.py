"""Binary matrices, polyominoes, permutations and their enumerators.

Rows are stored bottom-to-top as integer bitmasks; bit ``j`` of a row is
column ``j + 1`` counted from the left.  The text and JSON forms list the
top row first, which is how matrices are usually drawn.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

AREA_CAP = 14
SP_CAP = 14
PERM_CAP = 10


class PolyenumError(Exception):
    """Base class for every error raised by the package."""


class InvalidPolyomino(PolyenumError, ValueError):
    pass


class EmptyMatrix(InvalidPolyomino):
    pass


class NotConnected(InvalidPolyomino):
    pass


class LooseBoundingBox(InvalidPolyomino):
    pass


class CapExceeded(PolyenumError):
    pass


class NotAPermutationMatrix(PolyenumError, ValueError):
    pass


class InvalidMatrix(PolyenumError, ValueError):
    pass


# ---------------------------------------------------------------------------
# BinaryMatrix


@dataclass(frozen=True)
class BinaryMatrix:
    nrows: int
    ncols: int
    rows: tuple  # bottom row first, each an int bitmask

    def __post_init__(self):
        if self.nrows < 1 or self.ncols < 1:
            raise InvalidMatrix("a matrix needs at least one row and one column")
        if len(self.rows) != self.nrows:
            raise InvalidMatrix("row count mismatch")
        full = (1 << self.ncols) - 1
        for r in self.rows:
            if r & ~full or r < 0:
                raise InvalidMatrix("row has bits outside the column range")

    # construction ---------------------------------------------------------

    @classmethod
    def from_rows(cls, rows_bottom_up: Sequence[Sequence[int]]) -> "BinaryMatrix":
        """Build from nested lists, bottom row first."""
        rows_bottom_up = [list(r) for r in rows_bottom_up]
        if not rows_bottom_up or not rows_bottom_up[0]:
            raise InvalidMatrix("empty matrix")
        ncols = len(rows_bottom_up[0])
        masks = []
        for r in rows_bottom_up:
            if len(r) != ncols:
                raise InvalidMatrix("ragged rows")
            m = 0
            for j, b in enumerate(r):
                if b not in (0, 1):
                    raise InvalidMatrix(f"entry {b!r} is not 0/1")
                if b:
                    m |= 1 << j
            masks.append(m)
        return cls(len(masks), ncols, tuple(masks))

    @classmethod
    def from_visual(cls, rows_top_down: Sequence[Sequence[int]] | str) -> "BinaryMatrix":
        """Build from rows as drawn (top row first). Strings like "101/011" work too."""
        if isinstance(rows_top_down, str):
            rows_top_down = [[int(c) for c in line] for line in rows_top_down.split("/")]
        return cls.from_rows(list(reversed([list(r) for r in rows_top_down])))

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        for ln in lines:
            if set(ln) - {"0", "1"}:
                raise InvalidMatrix(f"bad matrix line {ln!r}")
        return cls.from_visual([[int(c) for c in ln] for ln in lines])

    @classmethod
    def from_record(cls, rec: dict) -> "BinaryMatrix":
        m = cls.from_visual([[int(c) for c in line] for line in rec["bits"]])
        if m.nrows != rec["rows"] or m.ncols != rec["cols"]:
            raise InvalidMatrix("record dimensions disagree with bits")
        return m

    @classmethod
    def from_cells(cls, cells: Iterable[tuple[int, int]]) -> "BinaryMatrix":
        """Cells are (x, y) = (column, row), 0-based; the result is the tight box."""
        cells = list(cells)
        if not cells:
            raise EmptyMatrix("no cells")
        x0 = min(c[0] for c in cells)
        y0 = min(c[1] for c in cells)
        w = max(c[0] for c in cells) - x0 + 1
        h = max(c[1] for c in cells) - y0 + 1
        rows = [0] * h
        for x, y in cells:
            rows[y - y0] |= 1 << (x - x0)
        return cls(h, w, tuple(rows))

    # access ----------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """Entry (i, j), 1-based, i counted from the bottom row."""
        i, j = ij
        if not (1 <= i <= self.nrows and 1 <= j <= self.ncols):
            raise IndexError(ij)
        return (self.rows[i - 1] >> (j - 1)) & 1

    def row_bits(self, i: int) -> str:
        """Row i (0-based from bottom) as a left-to-right string."""
        r = self.rows[i]
        return "".join("1" if (r >> j) & 1 else "0" for j in range(self.ncols))

    @cached_property
    def cols(self) -> tuple:
        """Column bitmasks; bit i is row i (0-based from bottom)."""
        out = []
        for j in range(self.ncols):
            c = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    c |= 1 << i
            out.append(c)
        return tuple(out)

    @cached_property
    def cells(self) -> frozenset:
        return frozenset(
            (j, i) for i, r in enumerate(self.rows) for j in range(self.ncols) if (r >> j) & 1
        )

    @property
    def ones(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.ncols, self.nrows, self.cols)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "BinaryMatrix":
        """Keep the given 0-based rows and columns (both increasing)."""
        out = []
        for i in row_idx:
            r = self.rows[i]
            m = 0
            for t, j in enumerate(col_idx):
                if (r >> j) & 1:
                    m |= 1 << t
            out.append(m)
        return BinaryMatrix(len(row_idx), len(col_idx), tuple(out))

    def is_quasi_permutation(self) -> bool:
        return all(bin(r).count("1") <= 1 for r in self.rows) and all(
            bin(c).count("1") <= 1 for c in self.cols
        )

    # canonical forms and I/O ----------------------------------------------

    def visual(self) -> list[str]:
        return [self.row_bits(i) for i in range(self.nrows - 1, -1, -1)]

    @cached_property
    def sort_key(self) -> tuple:
        return (self.nrows, self.ncols, "".join(self.visual()))

    def __lt__(self, other: "BinaryMatrix") -> bool:
        return self.sort_key < other.sort_key

    def to_text(self) -> str:
        return "\n".join(self.visual()) + "\n"

    def to_record(self) -> dict:
        return {"rows": self.nrows, "cols": self.ncols, "bits": self.visual()}

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    def __repr__(self) -> str:
        return f"BinaryMatrix({'/'.join(self.visual())})"


def projections(m: BinaryMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Row sums bottom-to-top and column sums left-to-right."""
    return (
        tuple(bin(r).count("1") for r in m.rows),
        tuple(bin(c).count("1") for c in m.cols),
    )


# ---------------------------------------------------------------------------
# Polyomino


def _is_interval(mask: int) -> bool:
    if mask == 0:
        return False
    low = mask & -mask
    return (mask + low) & mask == 0


def _connected(rows: Sequence[int], ncols: int) -> bool:
    cells = [(j, i) for i, r in enumerate(rows) for j in range(ncols) if (r >> j) & 1]
    if not cells:
        return False
    seen = {cells[0]}
    stack = [cells[0]]
    nrows = len(rows)
    while stack:
        x, y = stack.pop()
        for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if 0 <= ny < nrows and 0 <= nx < ncols and (rows[ny] >> nx) & 1 and (nx, ny) not in seen:
                seen.add((nx, ny))
                stack.append((nx, ny))
    return len(seen) == len(cells)


@dataclass(frozen=True)
class Polyomino:
    """A validated matrix. Use :func:`validate_polyomino` to build one."""

    matrix: BinaryMatrix

    @property
    def width(self) -> int:
        return self.matrix.ncols

    @property
    def height(self) -> int:
        return self.matrix.nrows

    @property
    def semi_perimeter(self) -> int:
        return self.width + self.height

    sp = semi_perimeter

    @cached_property
    def area(self) -> int:
        return self.matrix.ones

    @cached_property
    def boundary_semi_perimeter(self) -> int:
        """Half the length of the boundary; equals sp for convex polyominoes."""
        rows = self.matrix.rows
        adj = sum(bin(r & (r >> 1)).count("1") for r in rows)
        adj += sum(bin(a & b).count("1") for a, b in zip(rows, rows[1:]))
        return 2 * self.area - adj

    @property
    def rows(self) -> tuple:
        return self.matrix.rows

    @property
    def cols(self) -> tuple:
        return self.matrix.cols

    @property
    def cells(self) -> frozenset:
        return self.matrix.cells

    def __contains__(self, cell: tuple[int, int]) -> bool:
        x, y = cell
        return 0 <= y < self.height and 0 <= x < self.width and (self.matrix.rows[y] >> x) & 1 == 1

    def transpose(self) -> "Polyomino":
        return Polyomino(self.matrix.transpose())

    def __lt__(self, other: "Polyomino") -> bool:
        return self.matrix.sort_key < other.matrix.sort_key

    def __repr__(self) -> str:
        return f"Polyomino({'/'.join(self.matrix.visual())})"


def validate_polyomino(m: BinaryMatrix) -> Polyomino:
    if not any(m.rows):
        raise EmptyMatrix("matrix has no 1 entries")
    cols = m.cols
    if m.rows[0] == 0 or m.rows[-1] == 0 or cols[0] == 0 or cols[-1] == 0:
        raise LooseBoundingBox("an outer row or column is all zero")
    if not _connected(m.rows, m.ncols):
        raise NotConnected("cells are not edge-connected")
    return Polyomino(m)


def is_polyomino(m: BinaryMatrix) -> bool:
    try:
        validate_polyomino(m)
    except InvalidPolyomino:
        return False
    return True


def polyomino(spec: str | Sequence[Sequence[int]]) -> Polyomino:
    """Shorthand: polyomino("110/011") with rows drawn top first."""
    return validate_polyomino(BinaryMatrix.from_visual(spec))


# ---------------------------------------------------------------------------
# Cell paths


_STEP = {(0, 1): "n", (0, -1): "s", (1, 0): "e", (-1, 0): "w"}


@dataclass(frozen=True)
class CellPath:
    cells: tuple

    def __post_init__(self):
        if len(set(self.cells)) != len(self.cells):
            raise ValueError("path is not self-avoiding")
        for a, b in zip(self.cells, self.cells[1:]):
            if (b[0] - a[0], b[1] - a[1]) not in _STEP:
                raise ValueError(f"cells {a} and {b} are not edge-adjacent")

    @property
    def steps(self) -> str:
        return "".join(_STEP[(b[0] - a[0], b[1] - a[1])] for a, b in zip(self.cells, self.cells[1:]))

    @property
    def changes(self) -> int:
        s = self.steps
        return sum(1 for a, b in zip(s, s[1:]) if a != b)


def changes_of(word: str) -> int:
    return sum(1 for a, b in zip(word, word[1:]) if a != b)


# ---------------------------------------------------------------------------
# Polyomino enumeration


def _check_cap(value: int, cap: int | None, what: str) -> None:
    if cap is not None and value > cap:
        raise CapExceeded(f"{what}={value} exceeds cap {cap}")


def _normalize(cells: Iterable[tuple[int, int]]) -> frozenset:
    cells = list(cells)
    x0 = min(c[0] for c in cells)
    y0 = min(c[1] for c in cells)
    return frozenset((x - x0, y - y0) for x, y in cells)


def _growth_levels(max_area: int, max_sp: int | None = None) -> Iterator[set]:
    """Level n holds every polyomino of area n (as normalized cell sets).

    With ``max_sp`` set, shapes whose bounding box exceeds it are dropped;
    every polyomino can be grown one cell at a time inside its own box, so
    nothing of semi-perimeter <= max_sp is lost.
    """
    level = {frozenset({(0, 0)})}
    n = 1
    while True:
        yield level
        if n == max_area or not level:
            return
        nxt = set()
        for shape in level:
            for x, y in shape:
                for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if c in shape:
                        continue
                    grown = _normalize(shape | {c})
                    if max_sp is not None:
                        w = max(p[0] for p in grown) + 1
                        h = max(p[1] for p in grown) + 1
                        if w + h > max_sp:
                            continue
                    nxt.add(grown)
        level = nxt
        n += 1


def polyominoes_by_growth(area: int | None = None, sp: int | None = None) -> list[Polyomino]:
    """Cell-growth enumerator with canonical dedup, exactly one of area/sp."""
    if (area is None) == (sp is None):
        raise ValueError("give exactly one of area, sp")
    if area is not None:
        levels = list(_growth_levels(area))
        shapes = levels[-1] if len(levels) == area else set()
    else:
        shapes = set()
        for level in _growth_levels(max(1, (sp // 2) * ((sp + 1) // 2)), sp):
            for s in level:
                w = max(p[0] for p in s) + 1
                h = max(p[1] for p in s) + 1
                if w + h == sp:
                    shapes.add(s)
    out = [Polyomino(BinaryMatrix.from_cells(s)) for s in shapes]
    out.sort()
    return out


PrefixPredicate = Callable[[tuple, int], bool]


def _rows_in_box(
    w: int,
    h: int | None,
    area: int | None,
    prefix_ok: PrefixPredicate | None,
) -> Iterator[tuple]:
    """Row-by-row generator for polyominoes of width ``w``.

    Rows are built bottom-up.  The state is the partition of the top row's
    cells into components of the prefix; a component that misses the next
    row is sealed off for good, so such rows are skipped.  ``prefix_ok(rows,
    w)`` may prune further; it must only reject prefixes none of whose
    extensions are wanted.
    """
    full = (1 << w) - 1
    runs_of = [_runs(r) for r in range(full + 1)]
    popcount = [bin(r).count("1") for r in range(full + 1)]
    candidates = sorted(range(1, full + 1), key=lambda r: (popcount[r], r))
    rows: list[int] = []

    def step(state: tuple, r: int) -> tuple | None:
        # state: list of (component mask) for the previous top row
        runs = runs_of[r]
        parent = list(range(len(runs)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for comp in state:
            hit = [t for t, run in enumerate(runs) if run & comp]
            if not hit:
                return None
            for t in hit[1:]:
                parent[find(t)] = find(hit[0])
        groups: dict[int, int] = {}
        for t, run in enumerate(runs):
            root = find(t)
            groups[root] = groups.get(root, 0) | run
        return tuple(sorted(groups.values()))

    def rec(state: tuple, union: int, cells_left: int | None):
        depth = len(rows)
        done = (h is not None and depth == h) or (area is not None and cells_left == 0)
        if done:
            if len(state) == 1 and union & 1 and union >> (w - 1) & 1:
                yield tuple(rows)
            return
        prev = rows[-1] if rows else full
        for r in candidates:
            c = popcount[r]
            if cells_left is not None:
                if c > cells_left:
                    break
                # every column must end up occupied
                if popcount[full & ~(union | r)] > cells_left - c:
                    continue
            if not r & prev:
                continue
            nstate = step(state, r) if rows else tuple(runs_of[r])
            if nstate is None:
                continue
            rows.append(r)
            if prefix_ok is None or prefix_ok(tuple(rows), w):
                yield from rec(nstate, union | r, None if cells_left is None else cells_left - c)
            rows.pop()

    yield from rec((), 0, area)


def _runs(mask: int) -> list[int]:
    """Maximal runs of consecutive 1 bits, each as a mask."""
    out = []
    while mask:
        low = mask & -mask
        run = mask & ~(mask + low)  # bits of the lowest run
        out.append(run)
        mask &= ~run
    return out


def polyominoes_by_rows(
    area: int | None = None,
    sp: int | None = None,
    prefix_ok: PrefixPredicate | None = None,
) -> list[Polyomino]:
    """Row-by-row enumerator, exactly one of area/sp, with optional pruning."""
    if (area is None) == (sp is None):
        raise ValueError("give exactly one of area, sp")
    out = []
    if area is not None:
        for w in range(1, area + 1):
            for rows in _rows_in_box(w, None, area, prefix_ok):
                out.append(Polyomino(BinaryMatrix(len(rows), w, rows)))
    else:
        for w in range(1, sp):
            for rows in _rows_in_box(w, sp - w, None, prefix_ok):
                out.append(Polyomino(BinaryMatrix(len(rows), w, rows)))
    out.sort()
    return out


def enumerate_polyominoes(
    area: int | None = None,
    sp: int | None = None,
    *,
    area_cap: int = AREA_CAP,
    sp_cap: int = SP_CAP,
    method: str = "growth",
) -> Iterator[Polyomino]:
    """All fixed polyominoes of the given area or semi-perimeter, canonical order."""
    if area is not None:
        _check_cap(area, area_cap, "area")
        if area < 1:
            return iter(())
    if sp is not None:
        _check_cap(sp, sp_cap, "sp")
        if sp < 2:
            return iter(())
    if method == "growth":
        return iter(polyominoes_by_growth(area=area, sp=sp))
    if method == "rows":
        return iter(polyominoes_by_rows(area=area, sp=sp))
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Permutations


@dataclass(frozen=True, order=True)
class Permutation:
    values: tuple

    def __post_init__(self):
        if sorted(self.values) != list(range(1, len(self.values) + 1)):
            raise ValueError(f"{self.values!r} is not a permutation of 1..n")

    @classmethod
    def parse(cls, s: str | Sequence[int]) -> "Permutation":
        if isinstance(s, str):
            s = s.strip()
            parts = s.replace(",", " ").split() if (" " in s or "," in s) else list(s)
            return cls(tuple(int(p) for p in parts))
        return cls(tuple(s))

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __str__(self) -> str:
        if self.n < 10:
            return "".join(map(str, self.values))
        return " ".join(map(str, self.values))

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, v in enumerate(self.values, 1):
            inv[v - 1] = j
        return Permutation(tuple(inv))


def perm(s: str | Sequence[int]) -> Permutation:
    return Permutation.parse(s)


def enumerate_permutations(n: int, *, cap: int = PERM_CAP) -> Iterator[Permutation]:
    _check_cap(n, cap, "n")
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


def perm_to_matrix(p: Permutation) -> BinaryMatrix:
    """M(i, j) = 1 iff i = p(j)."""
    rows = [0] * p.n
    for j, v in enumerate(p.values):
        rows[v - 1] |= 1 << j
    return BinaryMatrix(p.n, p.n, tuple(rows))


def matrix_to_perm(m: BinaryMatrix) -> Permutation:
    if m.nrows != m.ncols:
        raise NotAPermutationMatrix("not square")
    if any(bin(r).count("1") != 1 for r in m.rows) or any(bin(c).count("1") != 1 for c in m.cols):
        raise NotAPermutationMatrix("needs exactly one 1 per row and column")
    return Permutation(tuple(c.bit_length() for c in m.cols))
