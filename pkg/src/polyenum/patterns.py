"""Submatrix containment, generalized matrix patterns and permutation patterns.

A matrix pattern is matched by picking rows of the host bottom-up and then
checking, with one bitmask per pattern column, whether an increasing run of
host columns fits.  Generalized patterns add wildcards and adjacency bars;
the same search handles both.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Sequence

from .core import (
    BinaryMatrix,
    CapExceeded,
    InvalidMatrix,
    Permutation,
    Polyomino,
    PolyenumError,
    enumerate_permutations,
    is_polyomino,
    perm,
    perm_to_matrix,
    polyominoes_by_rows,
    projections,
)


class NotQuasiPermutation(PolyenumError, ValueError):
    pass


class PatternSyntaxError(PolyenumError, ValueError):
    pass


# ---------------------------------------------------------------------------
# generalized patterns
#
# Bars are stored as gap indices.  Column gap g sits between pattern columns
# g-1 and g (0-based), so gap 0 is the west border and gap ncols the east
# border; row gaps work the same way from the bottom (gap 0 = south).


@dataclass(frozen=True)
class GenPattern:
    grid: tuple  # rows bottom-first, entries 0, 1 or None for *
    col_bars: frozenset = frozenset()
    row_bars: frozenset = frozenset()

    def __post_init__(self):
        if not self.grid or not self.grid[0]:
            raise PatternSyntaxError("empty pattern")
        w = len(self.grid[0])
        for row in self.grid:
            if len(row) != w:
                raise PatternSyntaxError("ragged pattern")
            if any(v not in (0, 1, None) for v in row):
                raise PatternSyntaxError(f"bad entry in {row!r}")
        if any(not 0 <= g <= w for g in self.col_bars):
            raise PatternSyntaxError("column bar out of range")
        if any(not 0 <= g <= len(self.grid) for g in self.row_bars):
            raise PatternSyntaxError("row bar out of range")

    @property
    def nrows(self) -> int:
        return len(self.grid)

    @property
    def ncols(self) -> int:
        return len(self.grid[0])

    @classmethod
    def of(cls, m: BinaryMatrix) -> "GenPattern":
        return cls(tuple(tuple(int(b) for b in m.row_bits(i)) for i in range(m.nrows)))

    @classmethod
    def parse(cls, text: str) -> "GenPattern":
        """Text form, top row first.

        Entries are 0, 1 or *; a '|' between entries marks adjacent columns,
        a line of '-' between rows marks adjacent rows.  A leading or trailing
        bar (or dash line) pins that side to the bounding box, as does a
        header line "borders:" followed by any of N, E, S, W.
        """
        borders = set()
        lines = []
        for raw in text.strip().splitlines():
            ln = raw.replace(" ", "").replace("\t", "")
            if not ln:
                continue
            if ln.lower().startswith("borders:"):
                marks = ln.split(":", 1)[1].upper()
                if set(marks) - set("NESW"):
                    raise PatternSyntaxError(f"bad border header {raw!r}")
                borders |= set(marks)
                continue
            lines.append(ln)
        rows_top, col_bars, row_bars_top = [], set(), []
        pending_dash = False
        for ln in lines:
            if set(ln) <= set("-+"):
                pending_dash = True
                continue
            entries, bars = [], set()
            for ch in ln:
                if ch == "|":
                    bars.add(len(entries))
                elif ch in "01*":
                    entries.append(None if ch == "*" else int(ch))
                else:
                    raise PatternSyntaxError(f"unexpected {ch!r} in {raw!r}")
            if pending_dash:
                row_bars_top.append(len(rows_top))
                pending_dash = False
            rows_top.append(tuple(entries))
            col_bars |= bars
        if not rows_top:
            raise PatternSyntaxError("no pattern rows")
        h, w = len(rows_top), len(rows_top[0])
        if pending_dash:
            row_bars_top.append(h)
        # a dash line before top row t separates rows t-1 and t counted from the top
        row_bars = {h - t for t in row_bars_top}
        if "W" in borders:
            col_bars.add(0)
        if "E" in borders:
            col_bars.add(w)
        if "S" in borders:
            row_bars.add(0)
        if "N" in borders:
            row_bars.add(h)
        return cls(tuple(reversed(rows_top)), frozenset(col_bars), frozenset(row_bars))

    def to_text(self) -> str:
        w, h = self.ncols, self.nrows
        out = []
        for i in range(h - 1, -1, -1):
            if i + 1 in self.row_bars and i + 1 < h:
                out.append("-" * (2 * w + 1))
            s = ""
            for j, v in enumerate(self.grid[i]):
                if j in self.col_bars and j > 0:
                    s += "|"
                s += "*" if v is None else str(v)
            out.append(s)
        marks = "".join(
            c for c, on in (
                ("N", h in self.row_bars), ("E", w in self.col_bars),
                ("S", 0 in self.row_bars), ("W", 0 in self.col_bars),
            ) if on
        )
        head = [f"borders:{marks}"] if marks else []
        return "\n".join(head + out) + "\n"

    def rotate(self) -> "GenPattern":
        """Quarter turn counterclockwise."""
        w, h = self.ncols, self.nrows
        # new cell (x', y') = (h-1-y, x)
        grid = [[None] * h for _ in range(w)]
        for y in range(h):
            for x in range(w):
                grid[x][h - 1 - y] = self.grid[y][x]
        return GenPattern(
            tuple(tuple(r) for r in grid),
            frozenset(h - g for g in self.row_bars),
            frozenset(self.col_bars),
        )

    def reflect(self) -> "GenPattern":
        """Mirror left to right."""
        w = self.ncols
        return GenPattern(
            tuple(tuple(reversed(r)) for r in self.grid),
            frozenset(w - g for g in self.col_bars),
            self.row_bars,
        )

    def rotations(self) -> list["GenPattern"]:
        out, g = [], self
        for _ in range(4):
            if g not in out:
                out.append(g)
            g = g.rotate()
        return out

    def symmetries(self) -> list["GenPattern"]:
        out = []
        for g in self.rotations() + self.reflect().rotations():
            if g not in out:
                out.append(g)
        return out


def _as_pattern(q) -> GenPattern:
    if isinstance(q, GenPattern):
        return q
    if isinstance(q, Polyomino):
        q = q.matrix
    if isinstance(q, BinaryMatrix):
        return GenPattern.of(q)
    raise TypeError(f"not a pattern: {q!r}")


def _host(m) -> tuple[tuple, int]:
    if isinstance(m, Polyomino):
        m = m.matrix
    return m.rows, m.ncols


@lru_cache(maxsize=None)
def _compile(g: GenPattern) -> tuple:
    k, l = g.nrows, g.ncols
    ones = tuple(sum(1 << s for s, v in enumerate(r) if v == 1) for r in g.grid)
    zeros = tuple(sum(1 << s for s, v in enumerate(r) if v == 0) for r in g.grid)
    col_adj = tuple(s in g.col_bars for s in range(l + 1))
    row_adj = tuple(t in g.row_bars for t in range(k + 1))
    return k, l, ones, zeros, col_adj, row_adj


def _match(rows: Sequence[int], w: int, g: GenPattern, top_only: bool = False):
    """Search for an occurrence; returns (row indices, column indices) or None.

    With ``top_only`` the last pattern row must land on the host's top row.
    """
    h = len(rows)
    k, l, ones, zeros, col_adj, row_adj = _compile(g)
    if k > h or l > w:
        return None
    full = (1 << w) - 1

    def chain(cand):
        """Reachable column sets per pattern column, or None if blocked."""
        reach = []
        prev = None
        for s in range(l):
            if s == 0:
                allowed = 1 if col_adj[0] else full
            elif col_adj[s]:
                allowed = (prev << 1) & full
            else:
                low = prev & -prev
                allowed = full & ~((low << 1) - 1)
            cur = cand[s] & allowed
            if not cur:
                return None
            reach.append(cur)
            prev = cur
        if col_adj[l]:
            reach[-1] &= 1 << (w - 1)
            if not reach[-1]:
                return None
        return reach

    def witness(reach):
        cols = [0] * l
        top = reach[-1]
        cols[-1] = (top & -top).bit_length() - 1
        for s in range(l - 2, -1, -1):
            nxt = cols[s + 1]
            if col_adj[s + 1]:
                cols[s] = nxt - 1
            else:
                below = reach[s] & ((1 << nxt) - 1)
                cols[s] = (below & -below).bit_length() - 1
        return cols

    chosen: list[int] = []

    def rec(t: int, cand: list[int]):
        if t == k:
            if row_adj[k] and chosen[-1] != h - 1:
                return None
            reach = chain(cand)
            return None if reach is None else (tuple(chosen), tuple(witness(reach)))
        if t == 0:
            options = [0] if row_adj[0] else range(h - k + 1)
        elif row_adj[t]:
            options = [chosen[-1] + 1] if chosen[-1] + 1 < h else []
        else:
            options = range(chosen[-1] + 1, h - (k - t) + 1)
        if top_only and t == k - 1:
            options = [r for r in options if r == h - 1]
        o, z = ones[t], zeros[t]
        for r in options:
            host = rows[r]
            new = list(cand)
            for s in range(l):
                bit = 1 << s
                if o & bit:
                    new[s] &= host
                elif z & bit:
                    new[s] &= ~host & full
            if chain(new) is None:
                continue
            chosen.append(r)
            hit = rec(t + 1, new)
            chosen.pop()
            if hit is not None:
                return hit
        return None

    return rec(0, [full] * l)


def contains_submatrix(m, q) -> tuple | None:
    """Witness (rows, cols), 0-based with rows counted from the bottom, or None."""
    rows, w = _host(m)
    return _match(rows, w, _as_pattern(q))


def contains(m, q) -> bool:
    return contains_submatrix(m, q) is not None


def avoids_all(m, patterns: Iterable) -> bool:
    return not any(contains(m, q) for q in patterns)


def gen_pattern_match(p, g: GenPattern) -> bool:
    return contains(p, g)


def is_submatrix_of(q, m) -> bool:
    return contains(m, q)


# ---------------------------------------------------------------------------
# quasi-permutation matrices and the Marcus-Tardos notion


def uncovered_zeros(m: BinaryMatrix) -> list[tuple[int, int]]:
    """(row, col) 0-based of zeros with no 1 in their row or column."""
    return [
        (i, j) for i in range(m.nrows) for j in range(m.ncols)
        if not m.rows[i] and not m.cols[j]
    ]


def marcus_tardos_contains(pi: Permutation, p: BinaryMatrix) -> bool:
    """Some submatrix of the permutation matrix has a 1 wherever p does."""
    g = GenPattern(tuple(tuple(1 if v == 1 else None for v in r) for r in GenPattern.of(p).grid))
    return contains(perm_to_matrix(pi), g)


def flipped_variants(p: BinaryMatrix) -> list[BinaryMatrix]:
    """p with every subset of its uncovered zeros turned into 1s."""
    free = uncovered_zeros(p)
    out = []
    for k in range(len(free) + 1):
        for sub in itertools.combinations(free, k):
            rows = list(p.rows)
            for i, j in sub:
                rows[i] |= 1 << j
            out.append(BinaryMatrix(p.nrows, p.ncols, tuple(rows)))
    return out


# ---------------------------------------------------------------------------
# permutation patterns


def classical_occurrences(pi: Permutation, sigma: Permutation) -> list[tuple[int, ...]]:
    """Occurrences as tuples of entries of pi."""
    return BivincularPattern(sigma).occurrences(pi)


@dataclass(frozen=True)
class BivincularPattern:
    """(sigma, X, Y): x in X forces positions x, x+1 of the occurrence to be
    adjacent, y in Y forces values y, y+1 to be consecutive; 0 and k+1 stand
    for the two ends."""

    sigma: Permutation
    X: frozenset = frozenset()
    Y: frozenset = frozenset()

    def __post_init__(self):
        k = self.sigma.n
        if any(not 0 <= x <= k for x in self.X) or any(not 0 <= y <= k for y in self.Y):
            raise PatternSyntaxError("adjacency index out of range")

    def _ok(self, pi: Permutation, pos: tuple) -> bool:
        n = pi.n
        ii = (0,) + tuple(p + 1 for p in pos) + (n + 1,)
        if any(ii[x + 1] != ii[x] + 1 for x in self.X):
            return False
        jj = (0,) + tuple(sorted(pi[p] for p in pos)) + (n + 1,)
        return all(jj[y + 1] == jj[y] + 1 for y in self.Y)

    def occurrences(self, pi: Permutation) -> list[tuple[int, ...]]:
        k = self.sigma.n
        out = []
        for pos in itertools.combinations(range(pi.n), k):
            vals = [pi[p] for p in pos]
            if _std(vals) == self.sigma.values and self._ok(pi, pos):
                out.append(tuple(vals))
        return out

    def contained_in(self, pi: Permutation) -> bool:
        return bool(self.occurrences(pi))


def _std(vals: Sequence[int]) -> tuple:
    order = sorted(vals)
    return tuple(order.index(v) + 1 for v in vals)


def vincular(text: str) -> BivincularPattern:
    """Dash notation: "12-3-4" keeps 1,2 adjacent; a leading or trailing '['
    or ']' is not supported, letters are single digits."""
    digits, X = [], set()
    dash = True
    for ch in text.strip():
        if ch == "-":
            dash = True
            continue
        if not ch.isdigit():
            raise PatternSyntaxError(f"unexpected {ch!r} in {text!r}")
        if digits and not dash:
            X.add(len(digits))
        digits.append(int(ch))
        dash = False
    return BivincularPattern(perm(digits), frozenset(X))


@dataclass(frozen=True)
class MeshPattern:
    """sigma with shaded unit squares (a, b), 0 <= a, b <= k, indexed by their
    lower-left corner in the plot of sigma."""

    sigma: Permutation
    shaded: frozenset = frozenset()

    def __post_init__(self):
        k = self.sigma.n
        if any(not (0 <= a <= k and 0 <= b <= k) for a, b in self.shaded):
            raise PatternSyntaxError("shaded square out of range")

    def occurrences(self, pi: Permutation) -> list[tuple[int, ...]]:
        n, k = pi.n, self.sigma.n
        out = []
        for pos in itertools.combinations(range(pi.n), k):
            vals = [pi[p] for p in pos]
            if _std(vals) != self.sigma.values:
                continue
            xs = (0,) + tuple(p + 1 for p in pos) + (n + 1,)
            ys = (0,) + tuple(sorted(vals)) + (n + 1,)
            bad = False
            for a, b in self.shaded:
                for x in range(xs[a] + 1, xs[a + 1]):
                    if ys[b] < pi[x - 1] < ys[b + 1]:
                        bad = True
                        break
                if bad:
                    break
            if not bad:
                out.append(tuple(vals))
        return out

    def contained_in(self, pi: Permutation) -> bool:
        return bool(self.occurrences(pi))


def perm_contains(pi: Permutation, pattern) -> bool:
    """Classical for a Permutation, vincular for a dash string, else the
    pattern's own rule; a BinaryMatrix is matched as a submatrix."""
    if isinstance(pattern, Permutation):
        return BivincularPattern(pattern).contained_in(pi)
    if isinstance(pattern, str):
        return vincular(pattern).contained_in(pi)
    if isinstance(pattern, (BivincularPattern, MeshPattern)):
        return pattern.contained_in(pi)
    if isinstance(pattern, (BinaryMatrix, GenPattern)):
        return contains(perm_to_matrix(pi), pattern)
    raise TypeError(f"unsupported pattern {pattern!r}")


def perm_occurrences(pi: Permutation, pattern) -> list[tuple[int, ...]]:
    if isinstance(pattern, Permutation):
        return classical_occurrences(pi, pattern)
    if isinstance(pattern, str):
        return vincular(pattern).occurrences(pi)
    return pattern.occurrences(pi)


# ---------------------------------------------------------------------------
# avoidance sets


def av_perms(n: int, patterns: Iterable) -> list[Permutation]:
    pats = list(patterns)
    return [p for p in enumerate_permutations(n) if not any(perm_contains(p, q) for q in pats)]


def av_perm_counts(n_max: int, patterns: Iterable) -> list[int]:
    pats = list(patterns)
    return [len(av_perms(n, pats)) for n in range(1, n_max + 1)]


def avoid_prefix(patterns: Iterable) -> Callable[[tuple, int], bool]:
    """Prefix pruner for Av-classes: bottom rows form a submatrix of the final
    polyomino, so a prefix that already contains a pattern is dead."""
    pats = [_as_pattern(q) for q in patterns]
    # bars pinned to the north border only hold for the finished matrix
    pats = [q for q in pats if q.nrows not in q.row_bars]

    def ok(rows: tuple, w: int) -> bool:
        # shorter prefixes passed already, so a new occurrence uses the top row
        return not any(_match(rows, w, q, top_only=True) is not None for q in pats)

    return ok


def av_polyominoes(patterns: Iterable, sp: int) -> list[Polyomino]:
    """Polyominoes with box semi-perimeter sp avoiding every pattern."""
    from .core import SP_CAP

    if sp > SP_CAP:
        raise CapExceeded(f"sp={sp} exceeds {SP_CAP}")
    pats = [_as_pattern(q) for q in patterns]
    north = [q for q in pats if q.nrows in q.row_bars]
    return [
        p for p in polyominoes_by_rows(sp=sp, prefix_ok=avoid_prefix(pats))
        if avoids_all(p, north)
    ]


# ---------------------------------------------------------------------------
# pattern files
#
# Blocks are separated by blank lines and '#' starts a comment line.  A block
# is a matrix or generalized pattern in text form, or a single line
# "perm:231" (classical) or "vincular:12-3-4".


def parse_patterns(text: str) -> list:
    blocks: list[list[str]] = [[]]
    for raw in text.splitlines():
        ln = raw.strip()
        if ln.startswith("#"):
            continue
        if not ln:
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append(ln)
    out = []
    for block in blocks:
        if not block:
            continue
        head = block[0].lower()
        if head.startswith(("perm:", "vincular:")):
            for ln in block:
                kind, _, body = ln.partition(":")
                body = body.strip()
                try:
                    if kind.lower() == "perm":
                        out.append(perm(body))
                    elif kind.lower() == "vincular":
                        out.append(vincular(body))
                    else:
                        raise PatternSyntaxError(f"unexpected line {ln!r}")
                except (ValueError, InvalidMatrix) as exc:
                    if isinstance(exc, PatternSyntaxError):
                        raise
                    raise PatternSyntaxError(f"bad pattern {ln!r}: {exc}") from None
            continue
        g = GenPattern.parse("\n".join(block))
        if g.col_bars or g.row_bars or any(v is None for r in g.grid for v in r):
            out.append(g)
        else:
            out.append(BinaryMatrix(g.nrows, g.ncols, tuple(
                sum(v << j for j, v in enumerate(r)) for r in g.grid)))
    return out


def read_pattern_file(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return parse_patterns(fh.read())


def format_patterns(patterns: Iterable) -> str:
    out = []
    for q in patterns:
        if isinstance(q, Permutation):
            out.append(f"perm:{q}\n")
        elif isinstance(q, BinaryMatrix):
            out.append(q.to_text())
        elif isinstance(q, GenPattern):
            out.append(q.to_text())
        else:
            raise TypeError(f"cannot format {q!r}")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# named matrices, written as drawn (top row first)

NAMED: dict[str, BinaryMatrix] = {
    name: BinaryMatrix.from_visual(v)
    for name, v in {
        "H": "101",
        "V": "1/0/1",
        "H'": "010",
        "V'": "0/1/0",
        "D": "11/01",
        "M1": "10/11",
        "M2": "11/01",
        "S1": "10/01",
        "S2": "01/10",
        "Q1": "10/00/01",
        "Q2": "100/001",
        "MF": "001/100",
        "MG": "010/100",
        "MH": "000/001/010/100",
        "MJ": "000/010/001/100",
        "MK": "000/001/100/010",
        "Minf": "1001/1101",
        "zero": "0",
        "00": "00",
        "0;0": "0/0",
        "11": "11",
    }.items()
}

RECT_HOLES = [BinaryMatrix.from_visual(v) for v in ("010", "0/1/0", "10/00", "01/00", "00/10", "00/01")]

Z1 = GenPattern.parse(
    """
    0|*1
    ----
    *|10
    1|00
    """
)

Z2 = GenPattern.parse(
    """
    00|*1
    0*|1*
    -----
    *1|*0
    1*|00
    """
)


def z_patterns(with_reflections: bool = False) -> list[GenPattern]:
    pick = (lambda g: g.symmetries()) if with_reflections else (lambda g: g.rotations())
    out = []
    for g in pick(Z1) + pick(Z2):
        if g not in out:
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# geometric predicates matched against Av-classes


def _runs_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        run = mask & ~(mask + low)
        out.append(run)
        mask &= ~run
    return out


def rows_cols_comparable(p) -> bool:
    """Every two rows, and every two columns, are nested as cell sets."""
    m = p.matrix if isinstance(p, Polyomino) else p
    for lines in (m.rows, m.cols):
        for a, b in itertools.combinations(lines, 2):
            if a & b not in (a, b):
                return False
    return True


def runs_touch_box(p) -> bool:
    """Each maximal run of cells in a row or column reaches the bounding box."""
    m = p.matrix if isinstance(p, Polyomino) else p
    for lines, n in ((m.rows, m.ncols), (m.cols, m.nrows)):
        ends = 1 | 1 << (n - 1)
        for line in lines:
            if any(not run & ends for run in _runs_of(line)):
                return False
    return True


def rectangle_with_holes(p) -> bool:
    """The 0s form rectangles, at most one run of 0s per row and per column."""
    m = p.matrix if isinstance(p, Polyomino) else p
    fr, fc = (1 << m.ncols) - 1, (1 << m.nrows) - 1
    if any(len(_runs_of(~r & fr)) > 1 for r in m.rows):
        return False
    if any(len(_runs_of(~c & fc)) > 1 for c in m.cols):
        return False
    zeros = {(j, i) for i, r in enumerate(m.rows) for j in range(m.ncols) if not r >> j & 1}
    while zeros:
        todo = [zeros.pop()]
        comp = set(todo)
        while todo:
            x, y = todo.pop()
            for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if c in zeros:
                    zeros.discard(c)
                    comp.add(c)
                    todo.append(c)
        xs = [c[0] for c in comp]
        ys = [c[1] for c in comp]
        if (max(xs) - min(xs) + 1) * (max(ys) - min(ys) + 1) != len(comp):
            return False
    return True


@dataclass
class Characterization:
    name: str
    predicate: Callable
    patterns: list
    pruner: Callable | None = None  # sound prefix pruner for the predicate side
    universe: str = "all"  # or "convex"


def _characterizations() -> dict[str, Characterization]:
    from . import classify as cl

    n = NAMED
    return {
        "convex": Characterization("convex", cl.is_convex, [n["H"], n["V"]], cl.convex_prefix),
        "directedConvex": Characterization(
            "directedConvex", cl.is_directed_convex, [n["H"], n["V"], n["D"]], cl.directed_convex_prefix),
        "parallelogram": Characterization(
            "parallelogram", cl.is_parallelogram, [n["M1"], n["M2"]], cl.parallelogram_prefix),
        "lConvex": Characterization(
            "lConvex", cl.is_l_convex, [n["H"], n["V"], n["S1"], n["S2"]], cl.convex_prefix),
        "lPolyomino": Characterization(
            "lPolyomino", rows_cols_comparable, [n["S1"], n["S2"]],
            lambda rows, w: rows_cols_comparable(BinaryMatrix(len(rows), w, rows))),
        "cPrime": Characterization("cPrime", runs_touch_box, [n["H'"], n["V'"]]),
        "rectHoles": Characterization("rectHoles", rectangle_with_holes, RECT_HOLES),
        "twoConvex": Characterization(
            "twoConvex", lambda p: cl.is_k_convex(p, 2), z_patterns(), cl.convex_prefix, "convex"),
    }


CHARACTERIZATIONS = _characterizations()


def verify_characterization(tag: str, bound: int, patterns: list | None = None):
    """Compare the geometric predicate with the Av-filter for every polyomino
    with box semi-perimeter <= bound.  Returns (ok, counterexample or None).

    Each side is enumerated with its own sound pruner, so a polyomino in
    exactly one of the two sets is always reached.
    """
    from .classify import convex_prefix

    ch = CHARACTERIZATIONS[tag]
    pats = ch.patterns if patterns is None else patterns
    av_prune = avoid_prefix(pats)
    north = [q for q in map(_as_pattern, pats) if q.nrows in q.row_bars]
    for sp in range(2, bound + 1):
        if ch.universe == "convex":
            universe = polyominoes_by_rows(sp=sp, prefix_ok=convex_prefix)
            geo = {p for p in universe if ch.predicate(p)}
            av = {p for p in universe if avoids_all(p, pats)}
        else:
            geo = {p for p in polyominoes_by_rows(sp=sp, prefix_ok=ch.pruner) if ch.predicate(p)}
            av = {p for p in polyominoes_by_rows(sp=sp, prefix_ok=av_prune) if avoids_all(p, north)}
        diff = sorted(geo ^ av)
        if diff:
            return False, diff[0]
    return True, None


def two_convex_failures(bound: int, patterns: list | None = None) -> list[tuple[Polyomino, int, bool]]:
    """Convex polyominoes where degree <= 2 and Z-avoidance disagree, with
    their degree and whether they avoid the patterns."""
    from .classify import convex_prefix, convexity_degree

    pats = z_patterns() if patterns is None else patterns
    out = []
    for sp in range(2, bound + 1):
        for p in polyominoes_by_rows(sp=sp, prefix_ok=convex_prefix):
            deg = convexity_degree(p, stop_above=2)
            av = avoids_all(p, pats)
            if (deg <= 2) != av:
                out.append((p, deg, av))
    return out


# ---------------------------------------------------------------------------
# projections


def uniquely_determined(m: BinaryMatrix, table: dict | None = None) -> bool:
    """No other matrix of the same size shares both projections."""
    if table is None:
        table = projection_table(m.nrows, m.ncols)
    return table[projections(m)] == 1


def projection_table(h: int, w: int) -> dict:
    table: dict = {}
    for rows in itertools.product(range(1 << w), repeat=h):
        key = projections(BinaryMatrix(h, w, rows))
        table[key] = table.get(key, 0) + 1
    return table


def verify_ryser(max_dim: int = 4):
    """Uniqueness under projections equals avoidance of S1 and S2 for every
    binary matrix up to max_dim x max_dim.  Returns (ok, counterexample)."""
    s = [NAMED["S1"], NAMED["S2"]]
    for h in range(1, max_dim + 1):
        for w in range(1, max_dim + 1):
            table = projection_table(h, w)
            for rows in itertools.product(range(1 << w), repeat=h):
                m = BinaryMatrix(h, w, rows)
                if uniquely_determined(m, table) != avoids_all(m, s):
                    return False, m
    return True, None


# ---------------------------------------------------------------------------
# permutations into C' = Av(H', V')

_BLOCK_LEFT = BinaryMatrix.from_visual("01/00")
_BLOCK_TOP = BinaryMatrix.from_visual("00/10")
_BLOCK_OTHER = BinaryMatrix.from_visual("10/00")


def perm_to_cprime(pi: Permutation) -> BinaryMatrix:
    """Blow each entry of the permutation matrix up to a 2x2 block: 0 to a
    full block, the 1 of the first column, the 1 of the top row and the
    remaining 1s to three different one-cell blocks."""
    m = pi.n
    rows = [0] * (2 * m)
    for i in range(m):
        for j in range(m):
            if pi[j] != i + 1:
                block = 0b11, 0b11
            elif j == 0:
                block = _BLOCK_LEFT.rows
            elif i == m - 1:
                block = _BLOCK_TOP.rows
            else:
                block = _BLOCK_OTHER.rows
            for t in range(2):
                rows[2 * i + t] |= block[t] << (2 * j)
    return BinaryMatrix(2 * m, 2 * m, tuple(rows))


def verify_cprime_injection(m_max: int = 4):
    """Returns (ok, per-size image counts, first failure or None)."""
    cp = [NAMED["H'"], NAMED["V'"]]
    counts = {}
    for m in range(1, m_max + 1):
        seen = set()
        for pi in enumerate_permutations(m):
            q = perm_to_cprime(pi)
            if not is_polyomino(q) or not avoids_all(q, cp):
                return False, counts, pi
            seen.add(q)
        if len(seen) != factorial(m):
            return False, counts, None
        counts[m] = len(seen)
    return True, counts, None
