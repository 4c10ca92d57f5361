"""Family predicates for polyominoes and the convexity degree."""
from __future__ import annotations

from collections import deque
from typing import Callable

from .core import Polyomino, PolyenumError, _is_interval


class NotConvex(PolyenumError, ValueError):
    pass


class SourceMissing(PolyenumError):
    pass


def is_column_convex(p: Polyomino) -> bool:
    return all(_is_interval(c) for c in p.cols)


def is_row_convex(p: Polyomino) -> bool:
    return all(_is_interval(r) for r in p.rows)


def is_convex(p: Polyomino) -> bool:
    return is_row_convex(p) and is_column_convex(p)


def source(p: Polyomino) -> tuple[int, int]:
    r = p.rows[0]
    if not r:
        raise SourceMissing("bottom row is empty")
    return ((r & -r).bit_length() - 1, 0)


def is_directed(p: Polyomino) -> bool:
    """Every cell reachable from the source with north and east steps."""
    start = source(p)
    seen = {start}
    todo = [start]
    while todo:
        x, y = todo.pop()
        for c in ((x + 1, y), (x, y + 1)):
            if c not in seen and c in p:
                seen.add(c)
                todo.append(c)
    return len(seen) == p.area


# Corner regions of the bounding box for a convex polyomino: A top-left,
# B top-right, C bottom-left, D bottom-right.  A region is empty exactly when
# its corner cell belongs to the polyomino.


def _corners(p: Polyomino) -> dict[str, bool]:
    w, h = p.width, p.height
    return {
        "A": (0, h - 1) in p,
        "B": (w - 1, h - 1) in p,
        "C": (0, 0) in p,
        "D": (w - 1, 0) in p,
    }


def is_directed_convex(p: Polyomino) -> bool:
    return is_convex(p) and (0, 0) in p


def is_parallelogram(p: Polyomino) -> bool:
    if not is_convex(p):
        return False
    c = _corners(p)
    return c["B"] and c["C"]


def is_stack(p: Polyomino) -> bool:
    if not is_convex(p):
        return False
    c = _corners(p)
    return c["C"] and c["D"]


def is_ferrer(p: Polyomino) -> bool:
    if not is_convex(p):
        return False
    c = _corners(p)
    return c["A"] and c["C"] and c["D"]


# ---------------------------------------------------------------------------
# convexity degree


def _intervals(p: Polyomino):
    col_lo = [(c & -c).bit_length() - 1 for c in p.cols]
    col_hi = [c.bit_length() - 1 for c in p.cols]
    row_lo = [(r & -r).bit_length() - 1 for r in p.rows]
    row_hi = [r.bit_length() - 1 for r in p.rows]
    return col_lo, col_hi, row_lo, row_hi


def _greedy_changes(a, b, vertical_first, iv) -> int | None:
    """Changes of the maximal-side monotone path from a to b, or None."""
    col_lo, col_hi, row_lo, row_hi = iv
    x, y = a
    bx, by = b
    vertical = vertical_first
    sides = 0
    while (x, y) != (bx, by):
        if vertical:
            ny = min(col_hi[x], by) if by >= y else max(col_lo[x], by)
            moved, y = ny != y, ny
        else:
            nx = min(row_hi[y], bx) if bx >= x else max(row_lo[y], bx)
            moved, x = nx != x, nx
        if not moved:
            return None  # blocked at the start or at a turn
        sides += 1
        vertical = not vertical
    return max(sides - 1, 0)


def pair_changes(p: Polyomino, a, b, iv=None) -> int:
    """Least number of changes over the two greedy monotone paths from a to b."""
    if iv is None:
        iv = _intervals(p)
    if a == b:
        return 0
    best = None
    for vf in (True, False):
        c = _greedy_changes(a, b, vf, iv)
        if c is not None and (best is None or c < best):
            best = c
    if best is None:
        raise NotConvex("no monotone path between cells")
    return best


def convexity_degree(p: Polyomino, stop_above: int | None = None) -> int:
    """Least k such that every pair of cells is joined with at most k changes.

    With ``stop_above`` set, returns early as soon as the degree is known to
    exceed it (the returned value is then only a lower bound above it).
    """
    if not is_convex(p):
        raise NotConvex("convexity degree is defined for convex polyominoes")
    iv = _intervals(p)
    cells = sorted(p.cells)
    worst = 0
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            c = pair_changes(p, a, b, iv)
            if c > worst:
                worst = c
                if stop_above is not None and worst > stop_above:
                    return worst
    return worst


def is_k_convex(p: Polyomino, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return is_convex(p) and convexity_degree(p, stop_above=k) <= k


def is_l_convex(p: Polyomino) -> bool:
    return is_k_convex(p, 1)


def maximal_rectangles(p: Polyomino) -> list[tuple[int, int, int, int]]:
    """Maximal rectangles as (x0, x1, y0, y1), inclusive bounds."""
    rects = set()
    rows = p.rows
    for y0 in range(p.height):
        acc = (1 << p.width) - 1
        for y1 in range(y0, p.height):
            acc &= rows[y1]
            if not acc:
                break
            m = acc
            while m:
                low = m & -m
                run = m & ~(m + low)
                m &= ~run
                x0 = low.bit_length() - 1
                x1 = run.bit_length() - 1
                rects.add((x0, x1, y0, y1))
    def inside(r, s):
        return s[0] <= r[0] and r[1] <= s[1] and s[2] <= r[2] and r[3] <= s[3]
    return sorted(r for r in rects if not any(r != s and inside(r, s) for s in rects))


def rectangles_cross(r, s) -> bool:
    """One rectangle spans the other horizontally while the other spans it vertically."""
    def crosses(a, b):
        return a[0] <= b[0] and b[1] <= a[1] and b[2] <= a[2] and a[3] <= b[3]
    return crosses(r, s) or crosses(s, r)


def is_l_convex_by_rectangles(p: Polyomino) -> bool:
    if not is_convex(p):
        return False
    rects = maximal_rectangles(p)
    return all(rectangles_cross(r, s) for i, r in enumerate(rects) for s in rects[i + 1:])


# ---------------------------------------------------------------------------
# family registry

FAMILIES: dict[str, Callable[[Polyomino], bool]] = {
    "columnConvex": is_column_convex,
    "rowConvex": is_row_convex,
    "convex": is_convex,
    "directed": is_directed,
    "directedConvex": is_directed_convex,
    "parallelogram": is_parallelogram,
    "stack": is_stack,
    "ferrer": is_ferrer,
    "lConvex": is_l_convex,
}

_ALIASES = {
    "column-convex": "columnConvex",
    "row-convex": "rowConvex",
    "directed-convex": "directedConvex",
    "l-convex": "lConvex",
    "lconvex": "lConvex",
}


class UnknownFamily(PolyenumError, ValueError):
    pass


def family_predicate(name: str) -> Callable[[Polyomino], bool]:
    """Look up a predicate by name; "kconvex:K" gives the K-convex family."""
    key = _ALIASES.get(name, name)
    if key in FAMILIES:
        return FAMILIES[key]
    if key.lower().startswith("kconvex:"):
        k = int(key.split(":", 1)[1])
        return lambda p: is_k_convex(p, k)
    raise UnknownFamily(name)


def exhaustive_min_changes(p: Polyomino, a, b) -> int:
    """Slow oracle: 0-1 BFS over (cell, last step) restricted to monotone steps."""
    if a == b:
        return 0
    dx = (b[0] > a[0]) - (b[0] < a[0])
    dy = (b[1] > a[1]) - (b[1] < a[1])
    steps = []
    if dx:
        steps.append((dx, 0))
    if dy:
        steps.append((0, dy))
    inf = float("inf")
    dist = {}
    dq = deque()
    for s in steps:
        c = (a[0] + s[0], a[1] + s[1])
        if c in p:
            dist[(c, s)] = 0
            dq.append((0, c, s))
    best = inf
    while dq:
        d, c, s = dq.popleft()
        if d > dist.get((c, s), inf):
            continue
        if c == b:
            best = min(best, d)
            continue
        for t in steps:
            nc = (c[0] + t[0], c[1] + t[1])
            if nc not in p:
                continue
            nd = d + (t != s)
            if nd < dist.get((nc, t), inf):
                dist[(nc, t)] = nd
                if t == s:
                    dq.appendleft((nd, nc, t))
                else:
                    dq.append((nd, nc, t))
    return best


# ---------------------------------------------------------------------------
# pruned generation
#
# A prefix is the matrix of the bottom rows of a polyomino in its final box.
# Each predicate below looks at the newest row only (earlier rows were
# accepted already) and rejects a prefix when no extension can belong to the
# family.


def column_convex_prefix(rows: tuple, w: int) -> bool:
    if len(rows) < 2:
        return True
    below = 0
    for r in rows[:-2]:
        below |= r
    # a column that stopped in the previous row may not restart
    return rows[-1] & ~rows[-2] & below == 0


def convex_prefix(rows: tuple, w: int) -> bool:
    return _is_interval(rows[-1]) and column_convex_prefix(rows, w)


def directed_convex_prefix(rows: tuple, w: int) -> bool:
    if not convex_prefix(rows, w):
        return False
    return len(rows) > 1 or rows[0] & 1 == 1


def parallelogram_prefix(rows: tuple, w: int) -> bool:
    r = rows[-1]
    if not _is_interval(r):
        return False
    if len(rows) == 1:
        return r & 1 == 1
    q = rows[-2]
    lo, hi = (r & -r).bit_length(), r.bit_length()
    qlo, qhi = (q & -q).bit_length(), q.bit_length()
    return qlo <= lo <= qhi and hi >= qhi


PREFIX_PRUNERS = {
    "columnConvex": column_convex_prefix,
    "convex": convex_prefix,
    "directedConvex": directed_convex_prefix,
    "parallelogram": parallelogram_prefix,
    "stack": convex_prefix,
    "ferrer": convex_prefix,
    "lConvex": convex_prefix,
}


def members(family: str, sp: int) -> list[Polyomino]:
    """Family members with bounding-box semi-perimeter sp, canonical order."""
    from .core import polyominoes_by_rows

    key = _ALIASES.get(family, family)
    pred = family_predicate(key)
    prune = PREFIX_PRUNERS.get(key)
    if prune is None and key.lower().startswith("kconvex:"):
        prune = convex_prefix
    return [p for p in polyominoes_by_rows(sp=sp, prefix_ok=prune) if pred(p)]


def members_by_boundary(family: str, n: int) -> list[Polyomino]:
    """Family members whose boundary has half-length n (box sp <= n)."""
    out = [
        p for s in range(2, n + 1) for p in members(family, s)
        if p.boundary_semi_perimeter == n
    ]
    out.sort()
    return out
