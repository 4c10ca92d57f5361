"""Named verification checks shared by ``polyenum verify`` and the test suite.

A check returns a :class:`CheckResult` whose ``parts`` map a sub-claim to a
boolean; the check passes when every part does.  Bounds are keyword
arguments with the defaults used by the acceptance suite.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable

from . import bases as B
from . import patterns as P
from .classify import members, members_by_boundary
from .core import (
    BinaryMatrix,
    Polyomino,
    enumerate_permutations,
    perm,
    perm_to_matrix,
    enumerate_polyominoes,
)
from .kparallel import degree
from .series import (
    IdentityFailed,
    Poly2,
    Series,
    _convex_closed,
    _convex_dv,
    catalan,
    family_series,
    fib_identities,
    fib_lemma_holds,
    fib_poly,
    fib_poly_at,
    gf1_corrected,
    gf1_printed,
    gf_exact_degree,
    gf_k_parallelogram,
)
from .trees import count_trees, count_trees_exact, from_tree, pair_count, to_tree


@dataclass
class CheckResult:
    name: str
    parts: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    counterexample: object = None

    @property
    def ok(self) -> bool:
        return all(self.parts.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.parts.items() if not v]

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = "" if self.ok else " (failed: " + ", ".join(self.failed) + ")"
        return f"{status} {self.name}: {len(self.parts)} parts{tail}"

    def to_record(self) -> dict:
        return {
            "check": self.name,
            "ok": self.ok,
            "parts": self.parts,
            "details": self.details,
            "counterexample": _jsonable(self.counterexample),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, default=str)


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Polyomino):
        return obj.matrix.to_record()
    if isinstance(obj, BinaryMatrix):
        return obj.to_record()
    if isinstance(obj, (list, tuple)):
        return [_jsonable(o) for o in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return str(obj)


CHECKS: dict[str, Callable[..., CheckResult]] = {}


def register(name: str):
    def deco(fn):
        CHECKS[name] = fn
        return fn
    return deco


class UnknownCheck(KeyError):
    pass


def run_check(name: str, **bounds) -> CheckResult:
    if name not in CHECKS:
        raise UnknownCheck(name)
    return CHECKS[name](**{k: v for k, v in bounds.items() if v is not None})


# ---------------------------------------------------------------------------
# family counts


def _counts(family: str, lo: int, hi: int) -> list[int]:
    return [len(members(family, sp)) for sp in range(lo, hi + 1)]


@register("family-counts")
def family_counts(sp_max: int = 6) -> CheckResult:
    r = CheckResult("family-counts")
    N = max(sp_max, 6)
    convex = _counts("convex", 2, sp_max)
    closed = _convex_closed(N)
    dv = _convex_dv(N)
    r.parts["convex_paper"] = convex[:5] == [1, 2, 7, 28, 120][: len(convex)]
    r.parts["convex_closed"] = convex == [closed[n] for n in range(2, sp_max + 1)]
    r.parts["convex_algebraic"] = all(closed[n] == dv[n] for n in range(N + 1))

    dc = _counts("directedConvex", 2, sp_max)
    dcs = family_series("directedConvex", N)
    r.parts["directed_convex_paper"] = dc[:4] == [1, 2, 6, 20][: len(dc)]
    r.parts["directed_convex_series"] = dc == [dcs[n] for n in range(2, sp_max + 1)]

    par = _counts("parallelogram", 2, sp_max)
    cat = catalan(N)
    r.parts["parallelogram_paper"] = par[:4] == [1, 2, 5, 14][: len(par)]
    r.parts["parallelogram_catalan"] = par == [cat[n - 1] for n in range(2, sp_max + 1)]

    cc = [len(members_by_boundary("columnConvex", n)) for n in range(2, sp_max + 1)]
    ccs = family_series("columnConvex", N)
    r.parts["column_convex_paper"] = cc[:5] == [1, 2, 7, 28, 122][: len(cc)]
    r.parts["column_convex_series"] = cc == [ccs[n] for n in range(2, sp_max + 1)]

    lc = _counts("lConvex", 2, sp_max)
    lcs = family_series("lConvex", N)
    r.parts["l_convex_paper"] = lc[:5] == [1, 2, 7, 24, 82][: len(lc)]
    r.parts["l_convex_recurrence"] = lc == [lcs[n] for n in range(2, sp_max + 1)]

    r.details = {"convex": convex, "directedConvex": dc, "parallelogram": par,
                 "columnConvex": cc, "lConvex": lc}
    return r


# ---------------------------------------------------------------------------
# k-parallelogram polyominoes


@lru_cache(maxsize=None)
def parallelogram_degree_histogram(sp_max: int) -> dict[int, dict[int, int]]:
    """sp -> degree -> number of parallelogram polyominoes."""
    out: dict[int, dict[int, int]] = {}
    for sp in range(2, sp_max + 1):
        hist: dict[int, int] = {}
        for p in members("parallelogram", sp):
            d = degree(p)
            hist[d] = hist.get(d, 0) + 1
        out[sp] = hist
    return out


@register("kparallelogram")
def kparallelogram(sp_max: int = 12, k_max: int = 4, order: int = 20) -> CheckResult:
    r = CheckResult("kparallelogram")
    hist = parallelogram_degree_histogram(sp_max)
    for k in range(k_max + 1):
        pk = gf_k_parallelogram(k, sp_max)
        brute = [sum(c for d, c in hist[sp].items() if d <= k) for sp in range(2, sp_max + 1)]
        formula = [pk[sp] for sp in range(2, sp_max + 1)]
        r.parts[f"P_{k}"] = brute == formula
        r.details[f"P_{k}"] = brute
        if brute != formula and r.counterexample is None:
            sp = next(i for i, (a, b) in enumerate(zip(brute, formula)) if a != b) + 2
            r.counterexample = {"k": k, "sp": sp, "brute": brute[sp - 2], "formula": str(formula[sp - 2])}
    for k in range(1, k_max + 1):
        r.parts[f"Gf_{k}_difference_vs_recurrence"] = (
            gf_exact_degree(k, order, "difference") == gf_exact_degree(k, order, "recurrence")
        )
    return r


@register("gf1")
def gf1(order: int = 12) -> CheckResult:
    r = CheckResult("gf1")
    g = gf_exact_degree(1, order)
    r.parts["coefficients_4_to_7"] = [g[n] for n in range(4, 8)] == [3, 10, 25, 56]
    r.parts["corrected_form"] = g == gf1_corrected(order)
    printed = gf1_printed(order)
    # the printed form is the negative of the true series
    r.parts["printed_sign_flipped"] = printed == -1 * g and printed != g
    r.details = {"gf1": [str(g[n]) for n in range(order + 1)],
                 "printed": [str(printed[n]) for n in range(order + 1)]}
    return r


# ---------------------------------------------------------------------------
# Fibonacci polynomials


def _fibonacci(n: int) -> int:
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@register("fibonacci")
def fibonacci(k_max: int = 10, order: int = 8) -> CheckResult:
    r = CheckResult("fibonacci")
    x = Poly2.X
    z = Poly2.Z
    r.parts["recurrence"] = all(fib_poly(k) == fib_poly(k - 1) - x * fib_poly(k - 2) for k in range(3, k_max + 1))
    r.parts["initial_values"] = fib_poly(0) == Poly2.const(1) and fib_poly(1) == Poly2.const(1) and fib_poly(2) == Poly2.const(1) - z
    # F_k(-1, -1) runs through the Fibonacci numbers
    vals = [fib_poly_at(k, -1, -1) for k in range(k_max + 1)]
    r.parts["fibonacci_at_minus_one"] = vals == [Fraction(_fibonacci(k)) for k in range(k_max + 1)]
    r.parts["lemma"] = all(fib_lemma_holds(k, order) for k in range(1, k_max + 1))
    try:
        rep = fib_identities(k_max)
        r.parts["square_identity"] = rep["square"]
        r.parts["odd_identity"] = rep["odd"]
        r.parts["catalan_identity"] = rep["catalan"]
        r.parts["printed_catalan_fails"] = rep["catalan_printed"] is False
    except IdentityFailed as exc:
        r.parts[f"identity_{exc.args[0]}"] = False
        r.counterexample = {"identity": exc.args[0], "k": exc.args[1]}
    r.details = {"F_k(-1,-1)": [str(v) for v in vals]}
    return r


# ---------------------------------------------------------------------------
# trees


@register("tree-bijection")
def tree_bijection(sp_max: int = 10) -> CheckResult:
    r = CheckResult("tree-bijection")
    round_trip = nodes = height = True
    total = 0
    for sp in range(2, sp_max + 1):
        for p in members("parallelogram", sp):
            total += 1
            t = to_tree(p)
            bad = None
            if from_tree(t) != p:
                round_trip, bad = False, "round trip"
            elif t.size != sp:
                nodes, bad = False, "node count"
            elif t.height > degree(p) + 3:
                height, bad = False, "height bound"
            if bad and r.counterexample is None:
                r.counterexample = {"polyomino": p.matrix.to_record(), "failure": bad, "tree": str(t)}
    r.parts = {"round_trip": round_trip, "node_count_is_sp": nodes, "height_at_most_degree_plus_3": height}
    r.details = {"polyominoes": total}
    return r


def _tree_series(h: int, N: int) -> Series:
    """x F_{h-1} / F_h with z = x."""
    x = Series.gen(N)
    return x * fib_poly(h - 1).to_series(N) / fib_poly(h).to_series(N)


@register("trees")
def trees(sp_max: int = 10, n_max: int = 14, h_max: int = 8, pair_n: int = 12, pair_k: int = 3) -> CheckResult:
    base = tree_bijection(sp_max)
    r = CheckResult("trees", dict(base.parts), dict(base.details), base.counterexample)
    r.parts["six_nodes_height_five"] = count_trees_exact(6, 5) == 7
    ok = True
    for h in range(1, h_max + 1):
        s = _tree_series(h, n_max)
        if [count_trees(n, h) for n in range(1, n_max + 1)] != [s[n] for n in range(1, n_max + 1)]:
            ok = False
            r.counterexample = r.counterexample or {"height": h}
    r.parts["count_trees_vs_fibonacci_ratio"] = ok
    hist = parallelogram_degree_histogram(pair_n)
    ok = True
    for k in range(pair_k + 1):
        want = [sum(c for d, c in hist[n].items() if d <= k) for n in range(2, pair_n + 1)]
        got = [pair_count(n, k) for n in range(2, pair_n + 1)]
        if want != got:
            ok = False
            r.counterexample = r.counterexample or {"k": k, "pairs": got, "kparallelogram": want}
    r.parts["pair_count_vs_kparallelogram"] = ok
    return r


# ---------------------------------------------------------------------------
# permutation patterns


@register("perm-patterns")
def perm_patterns(pattern_max: int = 3, perm_max: int = 6) -> CheckResult:
    r = CheckResult("perm-patterns")
    s231 = perm("231")
    r.parts["24531_contains_231"] = P.perm_contains(perm("24531"), s231)
    r.parts["51423_avoids_231"] = not P.perm_contains(perm("51423"), s231)
    pi = perm("3542617")
    r.parts["vincular_12-3-4"] = P.perm_occurrences(pi, "12-3-4") == [(3, 5, 6, 7)]
    r.parts["classical_1234"] = sorted(P.perm_occurrences(pi, perm("1234"))) == [(3, 4, 6, 7), (3, 5, 6, 7)]
    mesh = P.MeshPattern(perm("3142"), frozenset({(0, 2), (1, 4), (4, 2)}))
    occ = set(mesh.occurrences(perm("425163")))
    r.parts["mesh_example"] = {(4, 2, 5, 3), (4, 2, 6, 3), (4, 1, 6, 3)} <= occ and (5, 1, 6, 3) not in occ
    av4 = sorted(str(p) for p in P.av_perms(4, [perm("123"), perm("231")]))
    r.parts["av4_123_231"] = av4 == ["1432", "2143", "3214", "4132", "4213", "4312", "4321"]
    ok = True
    for k in range(1, pattern_max + 1):
        for sigma in enumerate_permutations(k):
            sm = perm_to_matrix(sigma)
            for n in range(1, perm_max + 1):
                for p in enumerate_permutations(n):
                    if P.contains(perm_to_matrix(p), sm) != P.perm_contains(p, sigma):
                        ok = False
                        r.counterexample = r.counterexample or {"sigma": str(sigma), "pi": str(p)}
    r.parts["submatrix_vs_classical"] = ok
    r.details = {"av4": av4, "mesh_occurrences": sorted(occ)}
    return r


# ---------------------------------------------------------------------------
# characterizations


@register("characterizations")
def characterizations(sp_max: int = 10, tags: tuple = ("convex", "directedConvex", "parallelogram", "lConvex")) -> CheckResult:
    r = CheckResult("characterizations")
    for tag in tags:
        ok, cex = P.verify_characterization(tag, sp_max)
        r.parts[tag] = ok
        if cex is not None and r.counterexample is None:
            r.counterexample = {"class": tag, "polyomino": cex.matrix.to_record()}
    return r


@register("ryser")
def ryser(max_dim: int = 4) -> CheckResult:
    ok, cex = P.verify_ryser(max_dim)
    return CheckResult("ryser", {"ryser": ok}, {"max_dim": max_dim}, cex)


@register("two-convex-genpatterns")
def two_convex_genpatterns(sp_max: int = 10) -> CheckResult:
    fails = P.two_convex_failures(sp_max)
    cex = None
    if fails:
        p, deg, av = fails[0]
        cex = {"polyomino": p.matrix.to_record(), "degree": deg, "avoids": av}
    return CheckResult("two-convex-genpatterns", {"two_convex": not fails},
                       {"failures": len(fails), "patterns": [g.to_text() for g in P.z_patterns()]}, cex)


@register("class-characterizations")
def class_characterizations(sp_max: int = 10, max_dim: int = 4) -> CheckResult:
    r = CheckResult("class-characterizations")
    for sub in (characterizations(sp_max), ryser(max_dim), two_convex_genpatterns(sp_max)):
        r.parts.update(sub.parts)
        r.counterexample = r.counterexample or sub.counterexample
    return r


# ---------------------------------------------------------------------------
# bases


def is_injection(p) -> bool:
    """At most one zero in each row and each column."""
    m = p.matrix if isinstance(p, Polyomino) else p
    full_row, full_col = (1 << m.ncols) - 1, (1 << m.nrows) - 1
    return all(bin(full_row & ~r).count("1") <= 1 for r in m.rows) and all(
        bin(full_col & ~c).count("1") <= 1 for c in m.cols
    )


def class_specs(perm_bound: int = 6, poly_bound: int = 6) -> dict[str, B.ClassSpec]:
    from .classify import is_parallelogram as par

    forbidden = [perm(s) for s in ("321", "231", "312")]
    return {
        "T": B.ClassSpec("T", "perms", lambda p: p.n <= 2, perm_bound),
        "A": B.ClassSpec("A", "perms", lambda p: not any(P.perm_contains(p, s) for s in forbidden), perm_bound),
        "V": B.ClassSpec("V", "polyominoes", lambda p: p.width == 1, poly_bound),
        "R": B.ClassSpec("R", "polyominoes", lambda p: p.area == p.width * p.height, poly_bound),
        "injections": B.ClassSpec("injections", "polyominoes", is_injection, poly_bound),
        "parallelogram": B.ClassSpec("parallelogram", "polyominoes", par, poly_bound),
    }


def _vis(*texts: str) -> list[BinaryMatrix]:
    return sorted(BinaryMatrix.from_visual(t) for t in texts)


EXPECTED_CANONICAL = {
    "T": _vis("00", "0/0"),
    "A": _vis("100/001", "10/00/01"),
    "V": _vis("0", "11"),
    "R": _vis("0"),
}

EXPECTED_MINIMAL = {
    "T": [_vis("00"), _vis("0/0")],
    "A": [_vis("10/00/01"), _vis("100/001")],
    "V": [_vis("11")],
    "R": [_vis("0")],
}

INJECTION_BASIS_SIZE = 12


@lru_cache(maxsize=None)
def injection_p_basis(bound: int = 7) -> tuple:
    res = B.p_basis_from_m_basis([P.NAMED["00"], P.NAMED["0;0"]], "polyominoes", bound, "injections")
    return tuple(res.basis)


@register("bases")
def bases(max_dim: int = 3, inj_bound: int = 7, antichain_sp: int = 10) -> CheckResult:
    r = CheckResult("bases")
    specs = class_specs()
    for name in ("T", "A", "V", "R"):
        can = B.canonical_m_basis(specs[name], max_dim).basis
        r.parts[f"canonical_{name}"] = sorted(can) == EXPECTED_CANONICAL[name]
        mins = sorted(sorted(b) for b in B.minimal_m_bases(can, specs[name]))
        r.parts[f"minimal_{name}"] = mins == sorted(EXPECTED_MINIMAL[name])
        r.details[f"canonical_{name}"] = [m.visual() for m in can]
        r.details[f"minimal_{name}"] = [[m.visual() for m in b] for b in mins]

    inj = injection_p_basis(inj_bound)
    r.parts["injections_p_basis_size"] = len(inj) == INJECTION_BASIS_SIZE
    r.details["injections_p_basis"] = [p.matrix.visual() for p in inj]
    spec_inj = specs["injections"]
    r.parts["injections_p_basis_elements_minimal"] = all(
        not is_injection(p) and all(is_injection(q) for q in B.submatrices(p.matrix, proper=True) if P.is_polyomino(q))
        for p in inj
    )

    found = B.antichain_search(P.NAMED["Minf"], antichain_sp)
    chain = B.pick_antichain(found, 4)
    r.parts["antichain_four_found"] = len(chain) == 4
    r.parts["antichain_minimal"] = all(B.is_minimal_containing(p, P.NAMED["Minf"]) for p in chain)
    r.parts["antichain_incomparable"] = B.PatternSet.of([p.matrix for p in chain]).is_antichain
    r.details["antichain"] = [p.matrix.visual() for p in chain]

    par = B.is_robust([P.NAMED["M1"], P.NAMED["M2"]], specs["parallelogram"])
    r.parts["parallelogram_robust"] = par.robust
    ir = B.is_robust([p.matrix for p in inj], spec_inj)
    r.parts["injections_not_robust"] = not ir.robust
    r.details["injections_witness"] = [m.visual() for m in ir.witness or []]
    if not r.parts["injections_p_basis_size"]:
        r.counterexample = {"injections_p_basis_size": len(inj), "expected": INJECTION_BASIS_SIZE}
    return r


# ---------------------------------------------------------------------------
# permutation classes


def m_tau_top(tau: str) -> BinaryMatrix:
    return B.with_zero_row_on_top(perm_to_matrix(perm(tau)))


@register("perm-classes")
def perm_classes(n_max: int = 8, wilf_n: int = 7) -> CheckResult:
    r = CheckResult("perm-classes")
    N = P.NAMED
    fib = [_fibonacci(n) for n in range(1, n_max + 1)]
    central = [comb(2 * n - 2, n - 1) for n in range(1, n_max + 1)]
    counts = {name: B.av_counts([N[name]], n_max) for name in ("MF", "MG", "MH", "MJ", "MK")}
    r.parts["MF_fibonacci"] = counts["MF"] == fib
    r.parts["MG_linear"] = counts["MG"] == list(range(1, n_max + 1))
    for name in ("MH", "MJ", "MK"):
        r.parts[f"{name}_central_binomial"] = counts[name] == central
    taus = ["123", "132", "213", "231", "312", "321"]
    groups = B.wilf_classes([m_tau_top(t) for t in taus], wilf_n)
    r.parts["wilf_m_tau_top"] = len(groups) == 1
    r.details = {"counts": counts, "wilf": {str(list(k)): len(v) for k, v in groups.items()}}
    return r


# ---------------------------------------------------------------------------
# general enumeration


GROWTH_BOUND = Fraction(464, 100)


@register("polyomino-counts")
def polyomino_counts(area_max: int = 10) -> CheckResult:
    r = CheckResult("polyomino-counts")
    counts = []
    agree = True
    for n in range(1, area_max + 1):
        a = list(enumerate_polyominoes(area=n, method="growth"))
        b = list(enumerate_polyominoes(area=n, method="rows"))
        if a != b:
            agree = False
            r.counterexample = r.counterexample or {"area": n, "growth": len(a), "rows": len(b)}
        counts.append(len(a))
    r.parts["dual_oracle"] = agree
    # a_n^(1/n) < 4.64 iff a_n < 4.64^n
    r.parts["growth_bound"] = all(c < GROWTH_BOUND ** n for n, c in enumerate(counts, 1))
    r.details = {"counts": counts}
    return r


# ---------------------------------------------------------------------------
# C' lower bound


@register("cprime")
def cprime(m_max: int = 4) -> CheckResult:
    ok, counts, bad = P.verify_cprime_injection(m_max)
    cex = None
    if bad is not None:
        q = P.perm_to_cprime(bad)
        cex = {"perm": str(bad), "image": q.visual(), "polyomino": P.is_polyomino(q),
               "avoids": P.avoids_all(q, [P.NAMED["H'"], P.NAMED["V'"]])}
    return CheckResult("cprime", {"injection": ok}, {"counts": counts}, cex)


ACCEPTANCE = (
    "family-counts",
    "kparallelogram",
    "gf1",
    "fibonacci",
    "trees",
    "perm-patterns",
    "class-characterizations",
    "bases",
    "perm-classes",
    "polyomino-counts",
    "cprime",
)
