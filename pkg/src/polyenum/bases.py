"""Bases of permutation and polyomino classes, robustness and finite posets.

Every search here is bounded; results carry the bound and a flag saying
whether the answer is known to be complete.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .core import (
    BinaryMatrix,
    CapExceeded,
    Permutation,
    Polyomino,
    PolyenumError,
    SP_CAP,
    enumerate_permutations,
    is_polyomino,
    perm_to_matrix,
    polyominoes_by_rows,
)
from .patterns import NotQuasiPermutation, avoids_all, contains


class NotAPartialOrder(PolyenumError, ValueError):
    pass


# ---------------------------------------------------------------------------
# submatrices


def submatrices(m: BinaryMatrix, proper: bool = False) -> set[BinaryMatrix]:
    out = set()
    for a in range(1, m.nrows + 1):
        for rs in itertools.combinations(range(m.nrows), a):
            for b in range(1, m.ncols + 1):
                for cs in itertools.combinations(range(m.ncols), b):
                    out.add(m.submatrix(rs, cs))
    if proper:
        out.discard(m)
    return out


def one_step_deletions(m: BinaryMatrix) -> set[BinaryMatrix]:
    """Submatrices missing exactly one row or one column."""
    out = set()
    rows, cols = range(m.nrows), range(m.ncols)
    if m.nrows > 1:
        for i in rows:
            out.add(m.submatrix([r for r in rows if r != i], list(cols)))
    if m.ncols > 1:
        for j in cols:
            out.add(m.submatrix(list(rows), [c for c in cols if c != j]))
    return out


def leq(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    """a is a submatrix of b."""
    return contains(b, a)


def minimal_elements(ms: Iterable[BinaryMatrix]) -> list[BinaryMatrix]:
    ms = sorted(set(ms))
    return [m for m in ms if not any(o != m and leq(o, m) for o in ms)]


def maximal_elements(ms: Iterable[BinaryMatrix]) -> list[BinaryMatrix]:
    ms = sorted(set(ms))
    return [m for m in ms if not any(o != m and leq(m, o) for o in ms)]


@dataclass(frozen=True)
class PatternSet:
    matrices: tuple

    @classmethod
    def of(cls, ms: Iterable) -> "PatternSet":
        ms = [m.matrix if isinstance(m, Polyomino) else m for m in ms]
        return cls(tuple(sorted(set(ms))))

    @cached_property
    def is_antichain(self) -> bool:
        return all(
            not leq(a, b) and not leq(b, a)
            for a, b in itertools.combinations(self.matrices, 2)
        )

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self):
        return len(self.matrices)


@dataclass
class BasisResult:
    name: str
    basis: list
    bound: int
    complete: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "class": self.name,
                "bound": self.bound,
                "complete": self.complete,
                "basis": [_record(m) for m in self.basis],
            },
            separators=(",", ":"),
        )


def _record(m) -> dict:
    if isinstance(m, Permutation):
        return {"perm": str(m)}
    if isinstance(m, Polyomino):
        m = m.matrix
    return m.to_record()


# ---------------------------------------------------------------------------
# from an m-basis to the p-basis


def minimal_perms_containing(q: BinaryMatrix) -> list[Permutation]:
    """Each zero column of q receives a 1 from a new row and each zero row a
    1 from a new column; new rows and columns meet in 0s."""
    if not q.is_quasi_permutation():
        raise NotQuasiPermutation(repr(q))
    zero_rows = [i for i, r in enumerate(q.rows) if not r]
    zero_cols = [j for j, c in enumerate(q.cols) if not c]
    n_rows = q.nrows + len(zero_cols)
    n_cols = q.ncols + len(zero_rows)
    out = set()
    for new_r in itertools.combinations(range(n_rows), len(zero_cols)):
        old_r = [i for i in range(n_rows) if i not in new_r]
        for new_c in itertools.combinations(range(n_cols), len(zero_rows)):
            old_c = [j for j in range(n_cols) if j not in new_c]
            for rows_for_cols in itertools.permutations(new_r):
                for cols_for_rows in itertools.permutations(new_c):
                    value = [0] * n_cols  # value[column] = row + 1
                    for i, r in enumerate(q.rows):
                        if r:
                            value[old_c[r.bit_length() - 1]] = old_r[i] + 1
                    for zc, nr in zip(zero_cols, rows_for_cols):
                        value[old_c[zc]] = nr + 1
                    for zr, nc in zip(zero_rows, cols_for_rows):
                        value[nc] = old_r[zr] + 1
                    out.add(Permutation(tuple(value)))
    return sorted(out)


def minimal_perms_containing_brute(q: BinaryMatrix) -> list[Permutation]:
    """Oracle: permutations containing q with no smaller pattern doing so."""
    hits = []
    for n in range(max(q.nrows, q.ncols), q.nrows + q.ncols + 1):
        for p in enumerate_permutations(n):
            m = perm_to_matrix(p)
            if contains(m, q) and not any(contains(m, perm_to_matrix(h)) for h in hits):
                hits.append(p)
    return sorted(hits)


def _perm_minimal(perms: Iterable[Permutation]) -> list[Permutation]:
    ps = sorted(set(perms), key=lambda p: (p.n, p.values))
    keep: list[Permutation] = []
    for p in ps:
        m = perm_to_matrix(p)
        if not any(contains(m, perm_to_matrix(k)) for k in keep):
            keep.append(p)
    return keep


def p_basis_from_m_basis(mset: Iterable, universe: str = "perms", bound: int = 8, name: str = "") -> BasisResult:
    """Permutations: exact.  Polyominoes: minimal polyominoes containing a
    member, searched up to box semi-perimeter ``bound``."""
    ms = [m.matrix if isinstance(m, Polyomino) else m for m in mset]
    if universe == "perms":
        found = []
        for q in ms:
            if q.is_quasi_permutation():
                found += minimal_perms_containing(q)
        return BasisResult(name, _perm_minimal(found), bound, True)
    if universe != "polyominoes":
        raise ValueError(f"unknown universe {universe!r}")
    if bound > SP_CAP:
        raise CapExceeded(f"bound {bound} exceeds {SP_CAP}")
    basis: list[Polyomino] = []
    for sp in range(2, bound + 1):
        # a smaller minimal element inside p has a smaller box, so found already
        new = [
            p for p in polyominoes_by_rows(sp=sp)
            if not avoids_all(p, ms) and avoids_all(p, basis)
        ]
        basis += new
    return BasisResult(name, sorted(basis), bound, False)


def is_minimal_containing(p: Polyomino | BinaryMatrix, m: BinaryMatrix) -> bool:
    """p contains m and none of its proper polyomino submatrices does."""
    pm = p.matrix if isinstance(p, Polyomino) else p
    if not contains(pm, m):
        return False
    # cheap rejection before the full scan
    if any(is_polyomino(s) and contains(s, m) for s in one_step_deletions(pm)):
        return False
    for s in submatrices(pm, proper=True):
        if is_polyomino(s) and contains(s, m):
            return False
    return True


# ---------------------------------------------------------------------------
# canonical and minimal m-bases


def _all_matrices(h: int, w: int, quasi: bool) -> Iterable[BinaryMatrix]:
    for rows in itertools.product(range(1 << w), repeat=h):
        m = BinaryMatrix(h, w, rows)
        if not quasi or m.is_quasi_permutation():
            yield m


def c_plus(members: Iterable[BinaryMatrix], max_dim: int) -> set[BinaryMatrix]:
    out: set[BinaryMatrix] = set()
    for m in members:
        for a in range(1, min(m.nrows, max_dim) + 1):
            for rs in itertools.combinations(range(m.nrows), a):
                for b in range(1, min(m.ncols, max_dim) + 1):
                    for cs in itertools.combinations(range(m.ncols), b):
                        out.add(m.submatrix(rs, cs))
    return out


@dataclass
class ClassSpec:
    """A class as a membership predicate on a bounded universe.

    ``kind`` is "perms" (objects up to size ``bound``) or "polyominoes"
    (box semi-perimeter up to ``bound``).
    """

    name: str
    kind: str
    member: Callable
    bound: int

    @cached_property
    def universe(self) -> list:
        if self.kind == "perms":
            return [p for n in range(1, self.bound + 1) for p in enumerate_permutations(n)]
        return [p for sp in range(2, self.bound + 1) for p in polyominoes_by_rows(sp=sp)]

    def matrix(self, obj) -> BinaryMatrix:
        return perm_to_matrix(obj) if self.kind == "perms" else obj.matrix

    @cached_property
    def members(self) -> list:
        return [o for o in self.universe if self.member(o)]

    def av_matches(self, mset: Sequence[BinaryMatrix]) -> bool:
        """Av(mset) agrees with the class on the bounded universe."""
        return all(self.member(o) == avoids_all(self.matrix(o), mset) for o in self.universe)


def canonical_m_basis(cls: ClassSpec, max_dim: int = 3) -> BasisResult:
    """Minimal matrices outside C+ with at most max_dim rows and columns.

    Permutation classes are read inside quasi-permutation matrices, the only
    matrices a permutation can contain.
    """
    quasi = cls.kind == "perms"
    plus = c_plus((cls.matrix(o) for o in cls.members), max_dim)
    out = []
    for h in range(1, max_dim + 1):
        for w in range(1, max_dim + 1):
            for m in _all_matrices(h, w, quasi):
                if m not in plus and all(s in plus for s in one_step_deletions(m)):
                    out.append(m)
    return BasisResult(cls.name, sorted(out), max_dim, False)


def minimal_m_bases(canonical: Sequence[BinaryMatrix], cls: ClassSpec) -> list[list[BinaryMatrix]]:
    """Inclusion-minimal subsets of the canonical m-basis describing the
    class, keeping those where no member can be swapped for a proper
    submatrix."""
    canonical = sorted(canonical)
    good: list[list[BinaryMatrix]] = []
    for k in range(1, len(canonical) + 1):
        for sub in itertools.combinations(canonical, k):
            if any(set(g) <= set(sub) for g in good):
                continue
            if cls.av_matches(sub):
                good.append(list(sub))
    return [b for b in good if _no_smaller_swap(b, cls)]


def _no_smaller_swap(b: list[BinaryMatrix], cls: ClassSpec) -> bool:
    for i, m in enumerate(b):
        for s in submatrices(m, proper=True):
            if cls.av_matches(b[:i] + [s] + b[i + 1:]):
                return False
    return True


# ---------------------------------------------------------------------------
# meets and robustness


def meet(a: BinaryMatrix, b: BinaryMatrix) -> list[BinaryMatrix]:
    """Maximal common submatrices; a set, never collapsed to one element."""
    return maximal_elements(submatrices(a) & submatrices(b))


def is_robust_singleton(m: BinaryMatrix) -> bool:
    return is_polyomino(m)


def _chain_avoiding_polyominoes(bottom: BinaryMatrix, top: BinaryMatrix) -> bool:
    """Some saturated chain from bottom up to top has no polyomino strictly
    between them (bottom itself is not a polyomino here)."""
    seen = set()
    todo = [top]
    while todo:
        m = todo.pop()
        for s in one_step_deletions(m):
            if s == bottom:
                return True
            if s in seen or not contains(s, bottom) or is_polyomino(s):
                continue
            seen.add(s)
            todo.append(s)
    return False


def condition_rob(p1: BinaryMatrix, p2: BinaryMatrix) -> bool:
    """Sufficient test for the robustness of Av(p1, p2): each element of the
    meet is a polyomino, or every chain from it to p1 and to p2 passes
    through a polyomino other than the endpoint."""
    for m in meet(p1, p2):
        if is_polyomino(m):
            continue
        if _chain_avoiding_polyominoes(m, p1) or _chain_avoiding_polyominoes(m, p2):
            return False
    return True


@dataclass
class RobustReport:
    robust: bool
    bound: int
    witness: list | None = None  # an m-basis missing part of the p-basis


def is_robust(p_basis: Sequence[BinaryMatrix], cls: ClassSpec) -> RobustReport:
    """The class fails to be robust exactly when a proper submatrix M of some
    p-basis element P lies outside C+: swapping P for M keeps the class.
    C+ is taken from members inside the bound, so a positive answer is only
    claimed within it."""
    p_basis = [m.matrix if isinstance(m, Polyomino) else m for m in p_basis]
    max_dim = max(max(m.nrows, m.ncols) for m in p_basis)
    plus = c_plus((cls.matrix(o) for o in cls.members), max_dim)
    swapped, changed = [], False
    for p in p_basis:
        outside = [s for s in submatrices(p, proper=True) if s not in plus]
        if outside:
            swapped.append(minimal_elements(outside)[0])
            changed = True
        else:
            swapped.append(p)
    if not changed:
        return RobustReport(True, cls.bound)
    return RobustReport(False, cls.bound, minimal_elements(swapped))


# ---------------------------------------------------------------------------
# the infinite antichain


def antichain_search(m: BinaryMatrix, sp_max: int) -> dict[int, list[Polyomino]]:
    """Minimal polyominoes containing m through an occurrence on the two
    bottom rows, the two leftmost columns and the rightmost column, by box
    semi-perimeter.  Tailored to the 2x4 matrix with an empty third column."""
    if (m.nrows, m.ncols) != (2, 4) or m.cols[2]:
        raise ValueError("expects a 2x4 matrix whose third column is empty")
    b0, b1, top0, top1 = m.rows[0] & 1, m.rows[0] >> 1 & 1, m.rows[1] & 1, m.rows[1] >> 1 & 1
    b3, t3 = m.rows[0] >> 3 & 1, m.rows[1] >> 3 & 1

    def bit(r, j):
        return r >> j & 1

    def prefix_ok(rows: tuple, w: int) -> bool:
        if w < 4:
            return False
        r = rows[-1]
        if len(rows) == 1:
            return (bit(r, 0), bit(r, 1), bit(r, w - 1)) == (b0, b1, b3)
        if len(rows) == 2:
            lo = rows[0]
            if (bit(r, 0), bit(r, 1), bit(r, w - 1)) != (top0, top1, t3):
                return False
            return any(not bit(lo, j) and not bit(r, j) for j in range(2, w - 1))
        return True

    out: dict[int, list[Polyomino]] = {}
    for sp in range(6, sp_max + 1):
        found = [p for p in polyominoes_by_rows(sp=sp, prefix_ok=prefix_ok) if is_minimal_containing(p, m)]
        if found:
            out[sp] = found
    return out


def pick_antichain(found: dict[int, list[Polyomino]], length: int = 4) -> list[Polyomino]:
    """One polyomino per size, first in canonical order, keeping the choice
    an antichain."""
    chain: list[Polyomino] = []
    for sp in sorted(found):
        for p in found[sp]:
            if all(not contains(p, q) and not contains(q, p) for q in chain):
                chain.append(p)
                break
        if len(chain) == length:
            break
    return chain


# ---------------------------------------------------------------------------
# Wilf-equivalence by an added zero row


def with_zero_row_on_top(m: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix(m.nrows + 1, m.ncols, m.rows + (0,))


def av_counts(mset: Sequence[BinaryMatrix], n_max: int) -> list[int]:
    return [
        sum(1 for p in enumerate_permutations(n) if avoids_all(perm_to_matrix(p), mset))
        for n in range(1, n_max + 1)
    ]


def wilf_classes(patterns: Sequence[BinaryMatrix], n_max: int) -> dict[tuple, list[BinaryMatrix]]:
    groups: dict[tuple, list[BinaryMatrix]] = {}
    for q in patterns:
        groups.setdefault(tuple(av_counts([q], n_max)), []).append(q)
    return groups


# ---------------------------------------------------------------------------
# finite posets


@dataclass
class FinitePoset:
    elements: list
    le: list  # le[i][j]: elements[i] <= elements[j]

    def __post_init__(self):
        n = len(self.elements)
        le = self.le
        for i in range(n):
            if not le[i][i]:
                raise NotAPartialOrder(f"not reflexive at {self.elements[i]!r}")
            for j in range(n):
                if i != j and le[i][j] and le[j][i]:
                    raise NotAPartialOrder("not antisymmetric")
                if le[i][j]:
                    for k in range(n):
                        if le[j][k] and not le[i][k]:
                            raise NotAPartialOrder("not transitive")

    @classmethod
    def from_relation(cls, elements: Sequence, rel: Callable) -> "FinitePoset":
        els = list(elements)
        return cls(els, [[rel(a, b) for b in els] for a in els])

    def __len__(self):
        return len(self.elements)

    def index(self, x) -> int:
        return self.elements.index(x)

    def leq(self, x, y) -> bool:
        return self.le[self.index(x)][self.index(y)]

    def covers(self) -> list[tuple]:
        """(x, y) with x < y and nothing strictly between."""
        n = len(self)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.le[i][j]:
                    continue
                if not any(k not in (i, j) and self.le[i][k] and self.le[k][j] for k in range(n)):
                    out.append((self.elements[i], self.elements[j]))
        return out

    def filter(self, ys: Iterable) -> list:
        """Elements strictly above every element of ys."""
        idx = [self.index(y) for y in ys]
        return [x for i, x in enumerate(self.elements) if all(self.le[j][i] and i != j for j in idx)]

    def ideal(self, ys: Iterable) -> list:
        """Elements strictly below every element of ys."""
        idx = [self.index(y) for y in ys]
        return [x for i, x in enumerate(self.elements) if all(self.le[i][j] and i != j for j in idx)]

    def minimal(self) -> list:
        n = len(self)
        return [self.elements[i] for i in range(n) if not any(j != i and self.le[j][i] for j in range(n))]

    def maximal(self) -> list:
        n = len(self)
        return [self.elements[i] for i in range(n) if not any(j != i and self.le[i][j] for j in range(n))]

    def is_antichain(self, xs: Iterable) -> bool:
        idx = [self.index(x) for x in xs]
        return all(not self.le[a][b] for a in idx for b in idx if a != b)

    def linear_extension_count(self) -> int:
        n = len(self)
        if n > 20:
            raise CapExceeded(f"{n} elements is too many for linear extensions")
        below = [sum(1 << j for j in range(n) if j != i and self.le[j][i]) for i in range(n)]
        ways = [0] * (1 << n)
        ways[0] = 1
        for s in range(1 << n):
            if not ways[s]:
                continue
            for i in range(n):
                if not s >> i & 1 and below[i] & s == below[i]:
                    ways[s | 1 << i] += ways[s]
        return ways[(1 << n) - 1]


def _tagged(p: FinitePoset, tag) -> list:
    return [(tag, x) for x in p.elements]


def disjoint_union(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    els = _tagged(p, 0) + _tagged(q, 1)

    def rel(a, b):
        if a[0] != b[0]:
            return False
        src = p if a[0] == 0 else q
        return src.leq(a[1], b[1])

    return FinitePoset.from_relation(els, rel)


def ordinal_sum(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    """Everything of p below everything of q."""
    els = _tagged(p, 0) + _tagged(q, 1)

    def rel(a, b):
        if a[0] != b[0]:
            return a[0] < b[0]
        src = p if a[0] == 0 else q
        return src.leq(a[1], b[1])

    return FinitePoset.from_relation(els, rel)


def cartesian_product(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    els = [(x, y) for x in p.elements for y in q.elements]
    return FinitePoset.from_relation(els, lambda a, b: p.leq(a[0], b[0]) and q.leq(a[1], b[1]))


def singleton() -> FinitePoset:
    return FinitePoset([0], [[True]])


def chain(n: int) -> FinitePoset:
    return FinitePoset.from_relation(range(n), lambda a, b: a <= b)


def antichain(n: int) -> FinitePoset:
    return FinitePoset.from_relation(range(n), lambda a, b: a == b)


def boolean_lattice(n: int) -> FinitePoset:
    els = [frozenset(s) for k in range(n + 1) for s in itertools.combinations(range(1, n + 1), k)]
    return FinitePoset.from_relation(els, lambda a, b: a <= b)


def matrix_poset(ms: Iterable[BinaryMatrix]) -> FinitePoset:
    return FinitePoset.from_relation(sorted(set(ms)), leq)
