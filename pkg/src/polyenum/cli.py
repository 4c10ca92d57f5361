"""Command-line interface.

Exit codes: 0 success, 2 invalid arguments, 3 cap exceeded, 4 crosscheck
mismatch, 5 verification check failed.
"""
from __future__ import annotations

import inspect
import json
import sys
from fractions import Fraction

import click

from . import checks as C
from .bases import p_basis_from_m_basis
from .cache import EnumerationCache
from .classify import _ALIASES, UnknownFamily, family_predicate, members, members_by_boundary
from .core import (
    AREA_CAP,
    SP_CAP,
    BinaryMatrix,
    CapExceeded,
    Permutation,
    Polyomino,
    enumerate_permutations,
    enumerate_polyominoes,
    perm_to_matrix,
)
from .kparallel import degree
from .patterns import (
    GenPattern,
    PatternSyntaxError,
    avoids_all,
    perm_contains,
    read_pattern_file,
)
from .series import FAMILY_SERIES, catalan, family_series, gf_exact_degree, gf_k_parallelogram

EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4
EXIT_CHECK = 5

SERIES_NAMES = FAMILY_SERIES + ("kparallelogram",)


class ExitWith(click.ClickException):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.exit_code = code


def _bound(value, cap: int, what: str) -> None:
    """Refuse a bound above a module cap before any work is done."""
    if value is not None and value > cap:
        raise ExitWith(f"cap exceeded: {what}={value} exceeds cap {cap}", EXIT_CAP)


def _cap(fn):
    """Run fn, turning CapExceeded into exit 3."""
    try:
        return fn()
    except CapExceeded as exc:
        raise ExitWith(f"cap exceeded: {exc}", EXIT_CAP) from None


def _family(name: str):
    try:
        family_predicate(name)
    except (UnknownFamily, ValueError):
        raise click.BadParameter(f"unknown family {name!r}", param_hint="--family") from None
    return name


def _patterns(path: str) -> list:
    try:
        return read_pattern_file(path)
    except (PatternSyntaxError, ValueError) as exc:
        raise click.BadParameter(str(exc), param_hint="--avoid") from None


def _as_matrix_pattern(q):
    return perm_to_matrix(q) if isinstance(q, Permutation) else q


def _cache(cache_dir, no_cache):
    return None if no_cache else EnumerationCache(cache_dir)


def _record_line(m: BinaryMatrix) -> str:
    return m.to_json()


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Enumerate polyominoes and permutations, compute series, run checks."""


# ---------------------------------------------------------------------------
# enumerate


@main.command("enumerate")
@click.option("--polyominoes", "kind", flag_value="polyominoes", default=True, help="Enumerate polyominoes.")
@click.option("--perms", "kind", flag_value="perms", help="Enumerate permutations.")
@click.option("--sp", type=click.IntRange(min=0), help="Bounding-box semi-perimeter.")
@click.option("--area", type=click.IntRange(min=0), help="Number of cells.")
@click.option("--n", "n", type=click.IntRange(min=0), help="Permutation length.")
@click.option("--family", help="Keep members of a polyomino family.")
@click.option("--avoid", "avoid", type=click.Path(exists=True, dir_okay=False), help="Pattern file to avoid.")
@click.option("-o", "--output", type=click.File("w"), default="-", help="Output file (JSONL).")
@click.option("--cache-dir", type=click.Path(file_okay=False), help="Cache directory (default $POLYENUM_CACHE).")
@click.option("--no-cache", is_flag=True, help="Do not read or write the cache.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, help="Accepted for compatibility; runs sequentially.")
def enumerate_cmd(kind, sp, area, n, family, avoid, output, cache_dir, no_cache, jobs):
    """Write objects as JSONL in canonical order."""
    pats = _patterns(avoid) if avoid else None
    cache = _cache(cache_dir, no_cache)
    if kind == "perms":
        if n is None or sp is not None or area is not None or family:
            raise click.UsageError("--perms takes --n and optionally --avoid")
        perms = _cap(lambda: list(enumerate_permutations(n)))
        for p in perms:
            if pats and any(perm_contains(p, q) for q in pats):
                continue
            output.write(json.dumps({"perm": str(p)}) + "\n")
        return
    if (sp is None) == (area is None) or n is not None:
        raise click.UsageError("give exactly one of --sp and --area")
    if family:
        _family(family)
    if area is not None:
        key, bound = "polyominoes-area", area
        build = lambda: (_record_line(p.matrix) for p in enumerate_polyominoes(area=area))  # noqa: E731
    elif family:
        key, bound = f"family-{family}", sp
        build = lambda: (_record_line(p.matrix) for p in members(family, sp))  # noqa: E731
    else:
        key, bound = "polyominoes-sp", sp
        build = lambda: (_record_line(p.matrix) for p in enumerate_polyominoes(sp=sp))  # noqa: E731
    lines = _cap(lambda: cache.get_or_build(key, bound, build) if cache else list(build()))
    pred = family_predicate(family) if family and area is not None else None
    mpats = [_as_matrix_pattern(q) for q in pats] if pats else None
    for ln in lines:
        if pred or mpats:
            m = BinaryMatrix.from_record(json.loads(ln))
            if pred and not pred(Polyomino(m)):
                continue
            if mpats and not avoids_all(m, mpats):
                continue
        output.write(ln + "\n")


# ---------------------------------------------------------------------------
# count


def _brute_counts(family: str, lo: int, hi: int) -> dict[int, int]:
    if family == "columnConvex":
        # counted by boundary half-perimeter, the statistic of its series
        return {n: len(members_by_boundary(family, n)) for n in range(lo, hi + 1)}
    return {n: len(members(family, n)) for n in range(lo, hi + 1)}


@main.command("count")
@click.option("--family", help="Polyomino family; counts by semi-perimeter.")
@click.option("--sp-max", type=click.IntRange(min=2), help="Largest semi-perimeter.")
@click.option("--area-max", type=click.IntRange(min=1), help="Count all polyominoes by area instead.")
@click.option("--crosscheck", type=click.Choice(["catalan", "series"]), help="Compare with a formula.")
@click.option("-o", "--output", type=click.File("w"), default="-")
@click.option("--jobs", type=click.IntRange(min=1), default=1, help="Accepted for compatibility; runs sequentially.")
def count_cmd(family, sp_max, area_max, crosscheck, output, jobs):
    """Brute-force counts as CSV "n,count[,match]"."""
    _bound(area_max, AREA_CAP, "area")
    _bound(sp_max, SP_CAP, "sp")
    if area_max is not None:
        if family or sp_max is not None or crosscheck:
            raise click.UsageError("--area-max takes no other option")
        counts = _cap(lambda: {a: sum(1 for _ in enumerate_polyominoes(area=a)) for a in range(1, area_max + 1)})
        output.write("n,count\n")
        for a, c in counts.items():
            output.write(f"{a},{c}\n")
        return
    if not family or sp_max is None:
        raise click.UsageError("--family and --sp-max are required")
    family = _family(family)
    key = _ALIASES.get(family, family)
    if crosscheck == "catalan" and key != "parallelogram":
        raise click.BadParameter("the Catalan crosscheck applies to parallelogram", param_hint="--crosscheck")
    if crosscheck == "series" and key not in FAMILY_SERIES:
        raise click.BadParameter(f"no series for {family}", param_hint="--crosscheck")
    counts = _cap(lambda: _brute_counts(key, 2, sp_max))
    ref = None
    if crosscheck == "catalan":
        cat = catalan(sp_max)
        ref = {n: cat[n - 1] for n in counts}
    elif crosscheck == "series":
        s = family_series(key, sp_max)
        ref = {n: s[n] for n in counts}
    output.write("n,count" + (",match" if ref else "") + "\n")
    bad = False
    for n, c in counts.items():
        if ref:
            ok = Fraction(c) == ref[n]
            bad |= not ok
            output.write(f"{n},{c},{'match' if ok else 'mismatch'}\n")
        else:
            output.write(f"{n},{c}\n")
    if bad:
        raise ExitWith("crosscheck mismatch", EXIT_MISMATCH)


# ---------------------------------------------------------------------------
# series


def _series_brute(gf: str, k: int | None, exact: bool, n: int) -> int:
    if n < 2:
        return 0
    if gf == "kparallelogram":
        degs = [degree(p) for p in members("parallelogram", n)]
        return sum(1 for d in degs if (d == k if exact else d <= k))
    return _brute_counts(gf, n, n)[n]


@main.command("series")
@click.option("--gf", "gf", required=True, type=click.Choice(SERIES_NAMES), help="Which series.")
@click.option("--k", "k", type=click.IntRange(min=0), help="Convexity degree for kparallelogram.")
@click.option("--terms", type=click.IntRange(min=0), required=True, help="Truncation order N; rows n = 0..N.")
@click.option("--exact-degree", is_flag=True, help="Degree exactly k instead of at most k.")
@click.option("--crosscheck", is_flag=True, help="Compare every row with a brute-force count.")
@click.option("-o", "--output", type=click.File("w"), default="-")
def series_cmd(gf, k, terms, exact_degree, crosscheck, output):
    """Exact coefficients as CSV "n,numerator,denominator[,match]"."""
    if crosscheck:
        _bound(terms, SP_CAP, "sp")
    if gf == "kparallelogram":
        if k is None:
            raise click.UsageError("--gf kparallelogram needs --k")
        s = gf_exact_degree(k, terms) if exact_degree else gf_k_parallelogram(k, terms)
    else:
        if k is not None or exact_degree:
            raise click.UsageError("--k and --exact-degree apply to kparallelogram only")
        s = family_series(gf, terms)
    output.write("n,numerator,denominator" + (",match" if crosscheck else "") + "\n")
    bad = False
    for n in range(terms + 1):
        c = s[n]
        row = f"{n},{c.numerator},{c.denominator}"
        if crosscheck:
            ok = _cap(lambda: _series_brute(gf, k, exact_degree, n)) == c
            bad |= not ok
            row += ",match" if ok else ",mismatch"
        output.write(row + "\n")
    if bad:
        raise ExitWith("crosscheck mismatch", EXIT_MISMATCH)


# ---------------------------------------------------------------------------
# basis


@main.command("basis")
@click.argument("m_basis", type=click.Path(exists=True, dir_okay=False))
@click.option("--universe", type=click.Choice(["perms", "polyominoes"]), default="polyominoes")
@click.option("--bound", type=click.IntRange(min=2), default=6, help="Semi-perimeter searched for polyominoes.")
@click.option("--name", default="", help="Class name in the report.")
def basis_cmd(m_basis, universe, bound, name):
    """p-basis of Av(m-basis) as a JSON report."""
    pats = [_as_matrix_pattern(q) for q in _patterns(m_basis)]
    if any(isinstance(q, GenPattern) for q in pats):
        raise click.BadParameter("an m-basis holds plain matrices", param_hint="M_BASIS")
    res = _cap(lambda: p_basis_from_m_basis(pats, universe, bound, name))
    click.echo(res.to_json())


# ---------------------------------------------------------------------------
# verify

_BOUND_OPTIONS = ("max_dim", "sp_max", "area_max", "n_max", "m_max", "k_max", "order")


@main.command("verify")
@click.argument("name", required=False)
@click.option("--list", "list_", is_flag=True, help="List registered checks.")
@click.option("--max-dim", type=click.IntRange(min=1))
@click.option("--sp-max", type=click.IntRange(min=2))
@click.option("--area-max", type=click.IntRange(min=1))
@click.option("--n-max", type=click.IntRange(min=1))
@click.option("--m-max", type=click.IntRange(min=1))
@click.option("--k-max", type=click.IntRange(min=0))
@click.option("--order", type=click.IntRange(min=1))
def verify_cmd(name, list_, **bounds):
    """Run a named check; prints a summary line and a JSON report."""
    if list_:
        for n in sorted(C.CHECKS):
            click.echo(n)
        return
    if not name:
        raise click.UsageError("missing check name (see --list)")
    if name not in C.CHECKS:
        raise click.BadParameter(f"unknown check {name!r}", param_hint="NAME")
    accepted = inspect.signature(C.CHECKS[name]).parameters
    given = {k: v for k, v in bounds.items() if v is not None}
    extra = sorted(set(given) - set(accepted))
    if extra:
        flags = ", ".join("--" + e.replace("_", "-") for e in extra)
        raise click.UsageError(f"{name} does not take {flags}")
    result = _cap(lambda: C.run_check(name, **given))
    click.echo(result.line())
    click.echo(result.to_json())
    if not result.ok:
        sys.exit(EXIT_CHECK)


if __name__ == "__main__":  # pragma: no cover
    main()
