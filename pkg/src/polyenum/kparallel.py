"""Greedy paths, flat/up/right classes and the boundary decomposition of
k-parallelogram polyominoes.

Cells are (x, y), 0-based from the bottom-left; S = (0, 0) and
E = (width-1, height-1).  The upper boundary is the lattice path from the
bottom-left corner to the top-right corner that starts north; the lower one
starts east.  Both are stored as words over {"n", "e"}.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .classify import is_parallelogram
from .core import BinaryMatrix, Polyomino, PolyenumError, changes_of


class NotParallelogram(PolyenumError, ValueError):
    pass


class DegreeZero(PolyenumError, ValueError):
    pass


class InvalidDecomposition(PolyenumError, ValueError):
    def __init__(self, constraint: str, detail: str = ""):
        super().__init__(f"{constraint}: {detail}" if detail else constraint)
        self.constraint = constraint


def _require(p: Polyomino) -> None:
    if not is_parallelogram(p):
        raise NotParallelogram(repr(p))


@dataclass(frozen=True)
class Profile:
    col_top: tuple
    row_right: tuple

    @classmethod
    def of(cls, p: Polyomino) -> "Profile":
        return cls(
            tuple(c.bit_length() - 1 for c in p.cols),
            tuple(r.bit_length() - 1 for r in p.rows),
        )


def _sides(prof: Profile, vertical_first: bool) -> list[tuple[str, tuple[int, int]]]:
    """Maximal sides from S to E as (direction, end cell).

    The first side may have length zero (it then ends at S); this encodes
    the convention that v and h coincide when the first column or the
    bottom row is a single cell.
    """
    w, h = len(prof.col_top), len(prof.row_right)
    x = y = 0
    vertical = vertical_first
    out = []
    while True:
        if vertical:
            y = prof.col_top[x]
            out.append(("n", (x, y)))
        else:
            x = prof.row_right[y]
            out.append(("e", (x, y)))
        if (x, y) == (w - 1, h - 1):
            return out
        vertical = not vertical


def _cells_of(sides) -> tuple:
    cells = [(0, 0)]
    for d, (ex, ey) in sides:
        x, y = cells[-1]
        while (x, y) != (ex, ey):
            x, y = (x, y + 1) if d == "n" else (x + 1, y)
            cells.append((x, y))
    return tuple(cells)


@dataclass(frozen=True)
class GreedyPath:
    cells: tuple

    @property
    def steps(self) -> str:
        return "".join(
            "n" if b[1] > a[1] else "e" for a, b in zip(self.cells, self.cells[1:])
        )

    @property
    def changes(self) -> int:
        return changes_of(self.steps)

    @property
    def sides(self) -> int:
        return self.changes + 1 if len(self.cells) > 1 else 0


def path_v(p: Polyomino) -> GreedyPath:
    _require(p)
    return GreedyPath(_cells_of(_sides(Profile.of(p), True)))


def path_h(p: Polyomino) -> GreedyPath:
    _require(p)
    return GreedyPath(_cells_of(_sides(Profile.of(p), False)))


def degree(p: Polyomino) -> int:
    """min(changes(h), changes(v)), the convexity degree of a parallelogram."""
    return min(path_h(p).changes, path_v(p).changes)


def cell_c(p: Polyomino) -> tuple[int, int]:
    """First cell of the common final stretch of h and v."""
    a, b = path_h(p).cells, path_v(p).cells
    i, j = len(a) - 1, len(b) - 1
    while i > 0 and j > 0 and a[i - 1] == b[j - 1]:
        i -= 1
        j -= 1
    return a[i]


def classify_kpar(p: Polyomino) -> tuple[str, int]:
    """("flat" | "up" | "right", k)."""
    k = degree(p)
    if k == 0:
        raise DegreeZero(repr(p))
    e = (p.width - 1, p.height - 1)
    if cell_c(p) == e:
        return "flat", k
    last = path_h(p).steps[-1]
    return ("up" if last == "n" else "right"), k


# ---------------------------------------------------------------------------
# boundary words


def upper_word(prof: Profile) -> str:
    out, y = [], -1
    for top in prof.col_top:
        out.append("n" * (top - y))
        out.append("e")
        y = top
    return "".join(out)


def lower_word(prof: Profile) -> str:
    out, x = [], -1
    for right in prof.row_right:
        out.append("e" * (right - x))
        out.append("n")
        x = right
    return "".join(out)


def _east_positions(word: str) -> list[int]:
    return [i for i, s in enumerate(word) if s == "e"]


def _north_positions(word: str) -> list[int]:
    return [i for i, s in enumerate(word) if s == "n"]


def profile_from_words(upper: str, lower: str) -> Profile:
    col_top, y = [], -1
    for s in upper:
        if s == "n":
            y += 1
        else:
            col_top.append(y)
    row_right, x = [], -1
    for s in lower:
        if s == "e":
            x += 1
        else:
            row_right.append(x)
    return Profile(tuple(col_top), tuple(row_right))


def polyomino_from_profile(prof: Profile) -> Polyomino:
    """Cells (x, y) with y <= col_top[x] and x <= row_right[y]."""
    w, h = len(prof.col_top), len(prof.row_right)
    if w == 0 or h == 0:
        raise InvalidDecomposition("shape", "empty boundary")
    rows = []
    for y in range(h):
        m = 0
        for x in range(min(prof.row_right[y], w - 1) + 1):
            if y <= prof.col_top[x]:
                m |= 1 << x
        rows.append(m)
    from .core import validate_polyomino, InvalidPolyomino

    try:
        p = validate_polyomino(BinaryMatrix(h, w, tuple(rows)))
    except InvalidPolyomino as exc:
        raise InvalidDecomposition("shape", str(exc)) from None
    if not is_parallelogram(p) or Profile.of(p) != prof:
        raise InvalidDecomposition("shape", "boundary paths do not bound a parallelogram polyomino")
    return p


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class Decomposition:
    k: int
    alphas: tuple
    betas: tuple

    def to_record(self) -> dict:
        return {"k": self.k, "alpha": list(self.alphas), "beta": list(self.betas)}

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def from_record(cls, rec: dict) -> "Decomposition":
        return cls(int(rec["k"]), tuple(rec["alpha"]), tuple(rec["beta"]))


def marked_steps(p: Polyomino, k: int | None = None):
    """Columns of X_1..X_{k+1} and rows of Y_1..Y_{k+1}.

    v supplies X at odd and Y at even indices, h the other way round.  A
    vertical side ending in column c marks the east step on top of c; a
    horizontal side ending in row r marks the north step right of r.
    """
    prof = Profile.of(p)
    v = _sides(prof, True)
    h = _sides(prof, False)
    if k is None:
        k = degree(p)
    X, Y = {}, {}
    for i in range(1, k + 2):
        for src in (v, h):
            if i - 1 >= len(src):
                continue
            d, (cx, cy) = src[i - 1]
            if d == "n":
                X.setdefault(i, cx)
            else:
                Y.setdefault(i, cy)
    return prof, [X[i] for i in range(1, k + 2)], [Y[i] for i in range(1, k + 2)]


def _cut(word: str, pos: list[int], k: int) -> tuple:
    """pieces[0] = piece 1 = word[pos_k : pos_{k+1}+1]; piece i = word[pos_{k+1-i} : pos_{k+2-i}]."""
    pieces = [word[pos[k - 1]: pos[k] + 1]]
    for i in range(2, k + 1):
        pieces.append(word[pos[k - i]: pos[k + 1 - i]])
    return tuple(pieces)


def decompose(p: Polyomino) -> Decomposition:
    _require(p)
    k = degree(p)
    if k == 0:
        raise DegreeZero(repr(p))
    prof, xs, ys = marked_steps(p, k)
    up, low = upper_word(prof), lower_word(prof)
    epos, npos = _east_positions(up), _north_positions(low)
    return Decomposition(k, _cut(up, [epos[c] for c in xs], k), _cut(low, [npos[r] for r in ys], k))


def frame(p: Polyomino) -> tuple[str, str, str, str]:
    """Parts of the boundary words outside the pieces: (upper head, upper tail, lower head, lower tail)."""
    k = degree(p)
    prof, xs, ys = marked_steps(p, k)
    up, low = upper_word(prof), lower_word(prof)
    epos, npos = _east_positions(up), _north_positions(low)
    a0, a1 = epos[xs[0]], epos[xs[k]]
    b0, b1 = npos[ys[0]], npos[ys[k]]
    return up[:a0], up[a1 + 1:], low[:b0], low[b1 + 1:]


# ---------------------------------------------------------------------------
# reconstruction
#
# The boundary words split as
#   upper = n^a + alpha_k ... alpha_1 + e^c
#   lower = e^b + beta_k ... beta_1 + n^d
# (exhaustively, heads and tails outside the pieces are pure runs).  Once the
# pieces are fixed, the semi-perimeter identity pins a + c, the equal step
# counts of the two words pin b and d, and the one remaining free parameter
# is found by searching the finitely many values and keeping the candidate
# whose decomposition is d itself.


def _ne(word: str) -> tuple[int, int]:
    return word.count("n"), word.count("e")


def check_decomposition(d: Decomposition) -> None:
    """Raise InvalidDecomposition naming the first violated constraint."""
    k, a, b = d.k, d.alphas, d.betas
    if k < 1:
        raise InvalidDecomposition("degree", "k must be at least 1")
    if len(a) != k or len(b) != k:
        raise InvalidDecomposition("length", "expected k alphas and k betas")
    for name, words in (("alpha", a), ("beta", b)):
        for w in words:
            if set(w) - {"n", "e"}:
                raise InvalidDecomposition("alphabet", f"{name} word {w!r}")
    if not a[0] or not b[0]:
        raise InvalidDecomposition("first-nonempty", "alpha_1 and beta_1 are never empty")
    for i, w in enumerate(a, 1):
        if w and w[0] != "e":
            raise InvalidDecomposition("alpha-start", f"alpha_{i} must start with e")
    for i, w in enumerate(b, 1):
        if w and w[0] != "n":
            raise InvalidDecomposition("beta-start", f"beta_{i} must start with n")
    if a[0][-1] != "e":
        raise InvalidDecomposition("alpha1-end", "alpha_1 must end with e")
    if b[0][-1] != "n":
        raise InvalidDecomposition("beta1-end", "beta_1 must end with n")
    flat = lambda w: len(set(w)) <= 1
    for i in range(1, k):
        # pieces i+1 (1-based) of alpha and piece i+2 of beta, and mirrored
        if i >= 2:
            if _ne(a[i - 1])[1] != _ne(b[i])[1]:
                raise InvalidDecomposition("width", f"alpha_{i} and beta_{i + 1}")
            if _ne(b[i - 1])[0] != _ne(a[i])[0]:
                raise InvalidDecomposition("height", f"beta_{i} and alpha_{i + 1}")
            if (a[i - 1] == "") != flat(b[i]):
                raise InvalidDecomposition("empty", f"alpha_{i} versus beta_{i + 1}")
            if (b[i - 1] == "") != flat(a[i]):
                raise InvalidDecomposition("empty", f"beta_{i} versus alpha_{i + 1}")
    if k >= 2:
        if _ne(a[0])[1] != _ne(b[1])[1] + 1:
            raise InvalidDecomposition("width", "alpha_1 and beta_2")
        if _ne(b[0])[0] != _ne(a[1])[0] + 1:
            raise InvalidDecomposition("height", "beta_1 and alpha_2")
        if (a[0] == "e") != flat(b[1]):
            raise InvalidDecomposition("unit-step", "alpha_1 = e exactly when beta_2 is empty or flat")
        if (b[0] == "n") != flat(a[1]):
            raise InvalidDecomposition("unit-step", "beta_1 = n exactly when alpha_2 is empty or flat")


def semi_perimeter_of(d: Decomposition) -> int:
    a, b = d.alphas, d.betas
    return (
        len(a[0]) + sum(_ne(w)[1] for w in a[1:])
        + len(b[0]) + sum(_ne(w)[0] for w in b[1:])
    )


def recompose(d: Decomposition) -> Polyomino:
    check_decomposition(d)
    up_mid = "".join(reversed(d.alphas))
    low_mid = "".join(reversed(d.betas))
    un, ue = _ne(up_mid)
    ln, le = _ne(low_mid)
    sp = semi_perimeter_of(d)
    # a + c = sp - |up_mid|;  b = c + ue - le;  d_tail = a + un - ln
    total = sp - un - ue
    for a in range(1, total + 1):
        c = total - a
        bh, dt = c + ue - le, a + un - ln
        if bh < 0 or dt < 0:
            continue
        upper = "n" * a + up_mid + "e" * c
        lower = "e" * bh + low_mid + "n" * dt
        try:
            p = polyomino_from_profile(profile_from_words(upper, lower))
        except InvalidDecomposition:
            continue
        if degree(p) == d.k and decompose(p) == d:
            return p
    raise InvalidDecomposition("uniqueness", "no parallelogram polyomino has this decomposition")


def _words(first: str, fixed_n: int | None, fixed_e: int | None, budget: int):
    """Words starting with `first` (or empty) with the given step counts.

    Exactly one of fixed_n / fixed_e is set; the other count ranges up to
    `budget`, which bounds the steps of the free kind.
    """
    from itertools import combinations

    other = "e" if first == "n" else "n"
    for free in range(budget + 1):
        n_cnt = fixed_n if fixed_n is not None else free
        e_cnt = fixed_e if fixed_e is not None else free
        f_cnt, o_cnt = (n_cnt, e_cnt) if first == "n" else (e_cnt, n_cnt)
        total = f_cnt + o_cnt
        if total == 0:
            yield ""
            continue
        if f_cnt == 0:
            continue
        for pos in combinations(range(1, total), o_cnt):
            w = [first] * total
            for q in pos:
                w[q] = other
            yield "".join(w)


def extend_degree(d: Decomposition, sp_max: int):
    """Decompositions of degree k+1 obtained from d by appending two pieces.

    The new alpha has the height of the last beta and the new beta the width
    of the last alpha (minus one each when going from degree 1 to 2); they
    are not both empty.  Only results with semi-perimeter <= sp_max are
    produced.
    """
    k, a, b = d.k, d.alphas, d.betas
    h = _ne(b[-1])[0] - (1 if k == 1 else 0)
    w = _ne(a[-1])[1] - (1 if k == 1 else 0)
    budget = sp_max - semi_perimeter_of(d)
    if h < 0 or w < 0 or budget < 0:
        return
    for alpha in _words("e", h, None, budget):
        ae = _ne(alpha)[1]
        for beta in _words("n", None, w, budget - ae):
            if not alpha and not beta:
                continue
            yield Decomposition(k + 1, a + (alpha,), b + (beta,))
