import io

import pytest

from isocontact.cli import main
from isocontact.formats import parse_openbook_file
from isocontact.openbook import ob_first_homology


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(map(str, argv)), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "name,code,verdict",
    [
        ("disk.ob", 0, "embeds"),
        ("trefoil.ob", 0, "embeds"),
        ("rp3.ob", 2, "conditional"),
        ("rp3_nonzero.ob", 1, "obstructed"),
    ],
)
def test_certify_s5_samples(samples_dir, name, code, verdict):
    c, out, _ = run("certify", samples_dir / name)
    assert c == code
    assert out.splitlines()[0] == f"verdict: {verdict}"


def test_certify_undeclared_c1_is_input_error(samples_dir):
    c, out, err = run("certify", samples_dir / "rp3_undeclared.ob")
    assert c == 3 and out == ""
    assert "c1 undeclared and not derivable" in err


@pytest.mark.parametrize(
    "name,code,rule",
    [
        ("s5.ff", 0, "R5"),
        ("s2xs3.ff", 0, "R6"),
        ("s2xs3_nonzero.ff", 1, "R1"),
        ("barden_mix.ff", 0, "R4"),
        ("twisted.ff", 2, "W2"),
    ],
)
def test_certify_s7_samples(samples_dir, name, code, rule):
    c, out, _ = run("certify", samples_dir / name, "--target", "s7")
    assert c == code
    assert f": {rule} — " in out


def test_certify_facts():
    c, out, _ = run("certify", "--facts", "contact-embedding-exists,almost-contact-homotopic")
    assert c == 0 and "R7 — " in out
    c, out, _ = run("certify", "--facts", "")
    assert c == 2 and out.startswith("verdict: unknown")
    c, _, err = run("certify", "--facts", "nonsense")
    assert c == 3 and err


def test_certify_needs_input():
    assert run("certify")[0] == 3


def test_invariants(samples_dir):
    c, out, _ = run("invariants", samples_dir / "rp3.ob")
    assert c == 0
    fields = dict(line.split(": ", 1) for line in out.splitlines())
    assert fields["h1"] == "Z/2" and fields["two_torsion"] == "true"
    assert fields["filling_sigma"] == "-1"


def test_sum_and_stabilize_emit_parseable_books(samples_dir, tmp_path):
    c, out, _ = run("sum", samples_dir / "rp3.ob", samples_dir / "rp3.ob")
    assert c == 0
    book = parse_openbook_file(out).book
    assert ob_first_homology(book).divisors == (2, 2)
    path = tmp_path / "sum.ob"
    path.write_text(out)
    c, out, _ = run("stabilize", path, "--sign", "-1")
    assert c == 0
    assert ob_first_homology(parse_openbook_file(out).book).divisors == (2, 2)
    assert run("stabilize", path, "--sign", "0")[0] == 3


def test_numeric_verbs():
    assert run("verify-profile")[0] == 0
    assert run("verify-collar", "--epsilon", "0.5")[0] == 0
    c, out, _ = run("k-threshold")
    assert c == 0 and "K0 = 1.5\n" in out
    c, out, _ = run("k-threshold", "--model", "builtin-positive")
    assert c == 0 and "K0 = 0\n" in out
    assert run("dehn-check")[0] == 0
    assert run("dehn-check", "--profile", "staircase")[0] == 2
    assert run("verify-profile", "--epsilon", "9")[0] == 3


def test_verify_profile_file_failure(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("r,h1,h2\n" + "".join(f"{i / 31},{1 - i / 64},0\n" for i in range(32)))
    c, out, _ = run("verify-profile", "--file", path)
    assert c == 2 and "fail" in out


def test_input_errors(samples_dir, tmp_path):
    assert run("frob")[0] == 3
    assert run()[0] == 3
    assert run("invariants", tmp_path / "missing.ob")[0] == 3
    bad = tmp_path / "bad.ob"
    bad.write_text("surface g=0 n=1\nword +a1\n")
    c, _, err = run("invariants", bad)
    assert c == 3 and "line 2" in err


def test_output_is_deterministic(samples_dir):
    for argv in (("certify", samples_dir / "rp3.ob"), ("dehn-check",), ("k-threshold",), ("invariants", samples_dir / "trefoil.ob")):
        assert run(*argv) == run(*argv)
