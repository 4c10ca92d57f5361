"""Planted plane trees and their bijection with parallelogram polyominoes.

Labels: column x of a polyomino of width w gets the plain label w - x (the
rightmost column is 1); row y of height h gets the barred label h - y (the
top row is 1-bar).  In the tree, the children of a column are the rows whose
right end lies in it, and the children of a row are the columns whose top
lies in it (the root column excepted); siblings are ordered by label.
Within each type, labels follow breadth-first order, so an unlabeled tree
carries its labeling implicitly.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple

from .classify import is_parallelogram
from .core import CapExceeded, Polyomino, PolyenumError
from .kparallel import InvalidDecomposition, NotParallelogram, Profile, polyomino_from_profile

TREE_CAP = 16


class MalformedTree(PolyenumError, ValueError):
    pass


class Label(NamedTuple):
    value: int
    barred: bool

    def __str__(self) -> str:
        return f"{self.value}̄" if self.barred else str(self.value)


def bar(v: int) -> Label:
    return Label(v, True)


def plain(v: int) -> Label:
    return Label(v, False)


@dataclass(frozen=True)
class PlantedPlaneTree:
    children: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "PlantedPlaneTree":
        """Parenthesis word, e.g. "(()(()))"; the outer pair is the root."""
        stack: list[list] = []
        root = None
        for ch in text.strip():
            if ch == "(":
                stack.append([])
            elif ch == ")":
                if not stack:
                    raise MalformedTree(f"unbalanced word {text!r}")
                node = cls(tuple(stack.pop()))
                if stack:
                    stack[-1].append(node)
                elif root is None:
                    root = node
                else:
                    raise MalformedTree(f"more than one root in {text!r}")
            else:
                raise MalformedTree(f"unexpected character {ch!r}")
        if stack or root is None:
            raise MalformedTree(f"unbalanced word {text!r}")
        return root

    def __str__(self) -> str:
        return "(" + "".join(str(c) for c in self.children) + ")"

    @cached_property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    @cached_property
    def height(self) -> int:
        """Nodes on a longest path starting at the root."""
        return 1 + max((c.height for c in self.children), default=0)

    def preorder(self) -> Iterator["PlantedPlaneTree"]:
        yield self
        for c in self.children:
            yield from c.preorder()


def tree_height(t: PlantedPlaneTree) -> int:
    return t.height


# ---------------------------------------------------------------------------
# labeling


def _bfs(t: PlantedPlaneTree) -> list[tuple[tuple, int, tuple | None]]:
    """(path, depth, parent path) in breadth-first order; paths index children."""
    out = []
    q = deque([((), t, 1, None)])
    while q:
        path, node, depth, parent = q.popleft()
        out.append((path, depth, parent))
        for i, c in enumerate(node.children):
            q.append((path + (i,), c, depth + 1, path))
    return out


def tree_labels(t: PlantedPlaneTree) -> dict[tuple, Label]:
    """Label of every node, keyed by its child-index path from the root."""
    counts = {False: 0, True: 0}
    labels = {}
    for path, depth, _ in _bfs(t):
        barred = depth % 2 == 0
        counts[barred] += 1
        labels[path] = Label(counts[barred], barred)
    return labels


@dataclass(frozen=True)
class BoundaryLabels:
    width: int
    height: int
    n: dict  # column label -> tuple of row labels
    e: dict  # row label -> tuple of column labels


def label_boundary(p: Polyomino) -> BoundaryLabels:
    if not is_parallelogram(p):
        raise NotParallelogram(repr(p))
    prof = Profile.of(p)
    w, h = p.width, p.height
    n = {plain(w - x): [] for x in range(w)}
    e = {bar(h - y): [] for y in range(h)}
    for y, x in enumerate(prof.row_right):
        n[plain(w - x)].append(bar(h - y))
    for x, y in enumerate(prof.col_top):
        if x != w - 1:
            e[bar(h - y)].append(plain(w - x))
    return BoundaryLabels(
        w, h,
        {k: tuple(sorted(v)) for k, v in n.items()},
        {k: tuple(sorted(v)) for k, v in e.items()},
    )


def to_tree(p: Polyomino) -> PlantedPlaneTree:
    lab = label_boundary(p)

    def build(label: Label) -> PlantedPlaneTree:
        kids = lab.e[label] if label.barred else lab.n[label]
        return PlantedPlaneTree(tuple(build(c) for c in kids))

    return build(plain(1))


def from_tree(t: PlantedPlaneTree) -> Polyomino:
    """Rebuild the polyomino: a column label fixes the right end of its child
    rows, a row label fixes the top of its child columns."""
    if not t.children:
        raise MalformedTree("a tree of the bijection has at least two nodes")
    labels = tree_labels(t)
    w = sum(1 for l in labels.values() if not l.barred)
    h = len(labels) - w
    col_top = [None] * w
    row_right = [None] * h
    col_top[w - 1] = h - 1
    for path, label in labels.items():
        if not path:
            continue
        parent = labels[path[:-1]]
        if label.barred:
            row_right[h - label.value] = w - parent.value
        else:
            col_top[w - label.value] = h - parent.value
    try:
        return polyomino_from_profile(Profile(tuple(col_top), tuple(row_right)))
    except InvalidDecomposition as exc:
        raise MalformedTree(str(exc)) from None


# ---------------------------------------------------------------------------
# degree and class from the tree


def _chain(t: PlantedPlaneTree, labels: dict, start: tuple) -> tuple:
    """Labels from `start` up towards the root, stopping at 1 or 1-bar."""
    out = []
    path = start
    while True:
        lab = labels[path]
        out.append(lab)
        if lab.value == 1:
            return tuple(out)
        path = path[:-1]


def tree_paths(t: PlantedPlaneTree) -> tuple[tuple, tuple]:
    """(h_T, v_T): chains from the greatest barred and plain labels."""
    labels = tree_labels(t)
    top = {}
    for path, lab in labels.items():
        if lab.value > top.get(lab.barred, (0, None))[0]:
            top[lab.barred] = (lab.value, path)
    return _chain(t, labels, top[True][1]), _chain(t, labels, top[False][1])


def degree_from_tree(t: PlantedPlaneTree) -> int:
    h_t, v_t = tree_paths(t)
    return min(len(h_t), len(v_t)) - 1


def class_from_tree(t: PlantedPlaneTree) -> str:
    """flat when |v_T| = |h_T|; otherwise up when |v_T| is odd, right when even."""
    h_t, v_t = tree_paths(t)
    j, jp = len(v_t), len(h_t)
    if j == jp:
        return "flat"
    return "up" if j % 2 == 1 else "right"


def merge_label(t: PlantedPlaneTree) -> Label | None:
    """Label of the node where the longer chain joins the shorter one.

    With L the longer and S the shorter chain, c is the least index with
    L[c:] == S[c-1:] (1-based); the node L[c-1] stands for cell C.  None
    for flat trees.
    """
    h_t, v_t = tree_paths(t)
    if len(h_t) == len(v_t):
        return None
    longer, shorter = (v_t, h_t) if len(v_t) > len(h_t) else (h_t, v_t)
    for c in range(2, len(longer) + 1):
        if longer[c - 1:] == shorter[c - 2:]:
            return longer[c - 2]
    raise MalformedTree("chains never merge")


def cell_of_label(p: Polyomino, label: Label) -> tuple[int, int]:
    """Top cell of a labeled column, or rightmost cell of a labeled row."""
    prof = Profile.of(p)
    if label.barred:
        y = p.height - label.value
        return prof.row_right[y], y
    x = p.width - label.value
    return x, prof.col_top[x]


def split_pair(t: PlantedPlaneTree) -> tuple[PlantedPlaneTree, PlantedPlaneTree]:
    """(T1, T2): the subtree of 1-bar and the rest of the tree."""
    if not t.children:
        raise MalformedTree("the root has no child")
    return t.children[0], PlantedPlaneTree(t.children[1:])


def join_pair(t1: PlantedPlaneTree, t2: PlantedPlaneTree) -> PlantedPlaneTree:
    return PlantedPlaneTree((t1,) + t2.children)


# ---------------------------------------------------------------------------
# counting


def enumerate_trees(n: int) -> Iterator[PlantedPlaneTree]:
    """All planted plane trees with n nodes."""
    if n < 1:
        return
    _check(n)
    for forest in _forests(n - 1):
        yield PlantedPlaneTree(forest)


@lru_cache(maxsize=None)
def _forests_cached(m: int) -> tuple:
    if m == 0:
        return ((),)
    out = []
    for first in range(1, m + 1):
        for kids in _forests_cached(first - 1):
            head = PlantedPlaneTree(kids)
            for rest in _forests_cached(m - first):
                out.append((head,) + rest)
    return tuple(out)


def _forests(m: int):
    return iter(_forests_cached(m))


def _check(n: int) -> None:
    if n > TREE_CAP:
        raise CapExceeded(f"n={n} exceeds the tree cap {TREE_CAP}")


@lru_cache(maxsize=None)
def height_histogram(n: int) -> dict[int, int]:
    """Height distribution of all trees with n nodes, by walking every
    Dyck word of length 2(n-1)."""
    _check(n)
    hist: Counter = Counter()

    def walk(up_left: int, depth: int, deepest: int) -> None:
        # once every up step is used the remaining down steps are forced
        if up_left == 0:
            hist[deepest + 1] += 1
            return
        walk(up_left - 1, depth + 1, max(deepest, depth + 1))
        if depth:
            walk(up_left, depth - 1, deepest)

    walk(n - 1, 0, 0)
    return dict(hist)


def count_trees(n: int, h_max: int) -> int:
    """Trees with n nodes and height at most h_max."""
    if n < 1:
        return 0
    return sum(c for h, c in height_histogram(n).items() if h <= h_max)


def count_trees_exact(n: int, h: int) -> int:
    return height_histogram(n).get(h, 0) if n >= 1 else 0


def pair_count(n: int, k: int) -> int:
    """Pairs with n nodes in total, both of height <= k+2, minus pairs with
    both of height exactly k+2."""
    total = 0
    for a in range(1, n):
        b = n - a
        total += count_trees(a, k + 2) * count_trees(b, k + 2)
        total -= count_trees_exact(a, k + 2) * count_trees_exact(b, k + 2)
    return total
