import json

import pytest
from click.testing import CliRunner

from polyenum.cli import main


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.setenv("POLYENUM_CACHE", str(tmp_path / "cache"))
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, [str(a) for a in args])

    return go


def _rows(out):
    return [ln.split(",") for ln in out.strip().splitlines()[1:]]


def test_enumerate_convex(run):
    r = run("enumerate", "--polyominoes", "--sp", 4, "--family", "convex")
    assert r.exit_code == 0
    recs = [json.loads(ln) for ln in r.output.splitlines()]
    assert len(recs) == 7 and all(set(x) == {"rows", "cols", "bits"} for x in recs)


def test_enumerate_perms_with_basis_file(run, tmp_path):
    f = tmp_path / "basis.txt"
    f.write_text("perm:123\nperm:231\n")
    r = run("enumerate", "--perms", "--n", 4, "--avoid", f)
    assert r.exit_code == 0
    assert [json.loads(ln)["perm"] for ln in r.output.splitlines()] == [
        "1432", "2143", "3214", "4132", "4213", "4312", "4321"]


def test_enumerate_area_and_cache_is_stable(run, tmp_path):
    first = run("enumerate", "--area", 2)
    assert first.exit_code == 0 and len(first.output.splitlines()) == 2
    assert list((tmp_path / "cache").iterdir())
    assert run("enumerate", "--area", 2).output == first.output
    assert run("enumerate", "--area", 2, "--no-cache", "--jobs", 4).output == first.output


def test_enumerate_with_matrix_patterns(run, tmp_path):
    f = tmp_path / "hv.txt"
    f.write_text("101\n\n1\n0\n1\n")
    r = run("enumerate", "--sp", 5, "--avoid", f)
    assert len(r.output.splitlines()) == 28


def test_series_gf1(run):
    r = run("series", "--gf", "kparallelogram", "--k", 1, "--terms", 8, "--exact-degree")
    assert r.exit_code == 0
    rows = _rows(r.output)
    assert [int(rows[n][1]) for n in range(4, 8)] == [3, 10, 25, 56]
    assert all(row[2] == "1" for row in rows)


def test_series_convex_crosscheck(run):
    r = run("series", "--gf", "convex", "--terms", 7, "--crosscheck")
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "n,numerator,denominator,match"
    assert [int(x[1]) for x in _rows(r.output)][2:] == [1, 2, 7, 28, 120, 528]
    assert all(x[3] == "match" for x in _rows(r.output))


def test_count_catalan(run):
    r = run("count", "--family", "parallelogram", "--sp-max", 6, "--crosscheck", "catalan")
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "n,count,match"
    assert all(x[2] == "match" for x in _rows(r.output))


def test_count_series_column_convex(run):
    r = run("count", "--family", "columnConvex", "--sp-max", 6, "--crosscheck", "series")
    assert r.exit_code == 0
    assert [int(x[1]) for x in _rows(r.output)] == [1, 2, 7, 28, 122]


def test_count_by_area(run):
    r = run("count", "--area-max", 5)
    assert [int(x[1]) for x in _rows(r.output)] == [1, 2, 6, 19, 63]


def test_count_mismatch_exits_4(run, monkeypatch):
    import polyenum.cli as cli

    monkeypatch.setattr(cli, "_brute_counts", lambda f, lo, hi: {n: 0 for n in range(lo, hi + 1)})
    r = run("count", "--family", "parallelogram", "--sp-max", 4, "--crosscheck", "catalan")
    assert r.exit_code == 4 and "mismatch" in r.output


def test_verify_pass_and_fail(run):
    r = run("verify", "ryser", "--max-dim", 3)
    assert r.exit_code == 0 and r.output.startswith("PASS ryser")
    rec = json.loads(r.output.splitlines()[1])
    assert rec["ok"] is True
    r = run("verify", "cprime", "--m-max", 2)
    assert r.exit_code == 5
    rec = json.loads(r.output.splitlines()[1])
    assert rec["counterexample"]["perm"] == "1"


def test_verify_tree_bijection(run):
    r = run("verify", "tree-bijection", "--sp-max", 8)
    assert r.exit_code == 0


def test_verify_list(run):
    r = run("verify", "--list")
    assert "two-convex-genpatterns" in r.output.split()


def test_basis_command(run, tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("10\n00\n01\n")
    r = run("basis", f, "--universe", "perms", "--name", "A")
    rec = json.loads(r.output)
    assert rec["class"] == "A" and rec["complete"] is True
    assert sorted(b["perm"] for b in rec["basis"]) == ["231", "312", "321"]


@pytest.mark.parametrize("args,code", [
    (("enumerate", "--sp", 3, "--area", 3), 2),
    (("enumerate", "--sp", 3, "--family", "spiral"), 2),
    (("enumerate", "--perms"), 2),
    (("enumerate", "--area", 15), 3),
    (("enumerate", "--perms", "--n", 11), 3),
    (("series", "--gf", "kparallelogram", "--terms", 5), 2),
    (("count", "--family", "convex", "--sp-max", 5, "--crosscheck", "catalan"), 2),
    (("count", "--family", "convex", "--sp-max", 20), 3),
    (("verify", "nope"), 2),
    (("verify", "ryser", "--sp-max", 4), 2),
])
def test_exit_codes(run, args, code):
    assert run(*args).exit_code == code


def test_bad_pattern_file_exits_2(run, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("1x\n")
    assert run("enumerate", "--sp", 3, "--avoid", f).exit_code == 2
