import subprocess
import sys

import pytest

from minext.catalog import make
from minext.classify import classify_minimal_extension
from minext.cli import run
from minext.fileformat import ParseError, emit_ring, emit_rrng, parse

F4_RING = """\
# the field with four elements
ring F4
carrier 2 2
unity 1 0
mul 0 0 = 1 0
mul 0 1 = 0 1
mul 1 0 = 0 1
mul 1 1 = 1 1
end
"""


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "minext.cli", *argv], capture_output=True, text=True)


def test_classify_field_extension_is_type_p(capsys):
    assert run(["classify", "--base", "catalog:gf(2)", "--ext", "catalog:gf(4)"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "type P"


def test_classify_outcomes(capsys):
    assert run(["classify", "--base", "gf(2)", "--ext", "diagonal(gf(2))"]) == 0
    assert capsys.readouterr().out.startswith("type SI")
    assert run(["classify", "--base", "tri(2,2)", "--ext", "tri_in_mat(2,2)"]) == 1
    assert "NotPrimeBase" in capsys.readouterr().out
    assert run(["classify", "--central", "--base", "gf(4)", "--ext", "ideal_extension(twisted_field(4,1))"]) == 1
    assert run(["classify", "--base", "gf(6)", "--ext", "gf(4)"]) == 2


def test_broken_file_names_missing_record(tmp_path, capsys):
    broken = tmp_path / "broken.ring"
    broken.write_text(F4_RING.replace("mul 1 0 = 0 1\n", ""))
    assert run(["validate", str(broken)]) == 2
    err = capsys.readouterr().err.strip()
    assert err == f"error: {broken}:8: missing-record: missing 'mul 1 0' line"


@pytest.mark.parametrize("text,rule", [
    ("carrier 2\nend\n", "outside-record"),
    ("ring A\ncarrier 2\nunity 1\nmul 0 0 = 1\n", "missing-end"),
    ("ring A\ncarrier 2\nunity 1\nmul 0 0 = 1\nmul 0 0 = 1\nend\n", "duplicate"),
    ("ring A\ncarrier 2\nunity 1\nmul 0 3 = 1\nend\n", "index-range"),
    ("ring A\ncarrier 2\nunity x\nmul 0 0 = 1\nend\n", "integer"),
    ("ring A\ncarrier 2 2\nunity 1 0\nmul 0 0 = 1 0\nmul 0 1 = 0 1\nmul 1 0 = 0 0\nmul 1 1 = 0 0\nend\n",
     "axiom"),
])
def test_parse_errors_name_the_rule(text, rule):
    with pytest.raises(ParseError) as err:
        parse(text, "t.ring")
    assert err.value.rule.startswith(rule) or rule == "axiom"
    assert str(err.value).startswith("t.ring:")


def test_validate_reports(tmp_path, capsys):
    f = tmp_path / "f4.ring"
    f.write_text(F4_RING)
    assert run(["validate", str(f)]) == 0
    assert capsys.readouterr().out == "ok ring F4 order 4\n"


@pytest.mark.parametrize("spec", ["mat(2,2)", "tri(2,3)", "zmod(12)", "product(gf(2),zmod(4))"])
def test_ring_file_round_trip(spec):
    R = make(spec)
    text = emit_ring(R)
    S = parse(text)[0]
    assert (S.sc == R.sc).all() and S.unity == R.unity
    assert emit_ring(S) == text


@pytest.mark.parametrize("spec", ["twisted_field(9,1)", "quotient_rrng(tri(2,2),1)", "regular_rrng(zmod(4))"])
def test_rrng_file_round_trip(spec):
    M = make(spec)
    objs = parse(emit_rrng(M))
    N = objs[-1]
    assert (N.lact == M.lact).all() and (N.ract == M.ract).all() and (N.I.sc == M.I.sc).all()


def test_rrng_file_with_catalog_reference():
    text = emit_rrng(make("twisted_field(4,1)"), ref="catalog:gf(4)")
    assert not text.startswith("ring")
    assert parse(text)[0].R is make("gf(4)")


@pytest.mark.parametrize("spec,base,first,code", [
    ("zero_bimodule(gf(2),0)", "gf(2)", "type N", 0),
    ("regular_rrng(gf(3))", "gf(3)", "type SI", 0),
    ("twisted_field(4,1)", "gf(4)", "type N", 0),
    ("quotient_rrng(zmod(4),2)", "zmod(4)", "NotPrimeBase: Z4 is not prime", 1),
])
def test_extend_validate_classify_round_trip(tmp_path, capsys, spec, base, first, code):
    out = tmp_path / "E.ring"
    assert run(["extend", "--rrng", spec, "--out", str(out)]) == 0
    assert run(["validate", str(out)]) == 0
    capsys.readouterr()
    assert run(["classify", "--base", base, "--ext", str(out)]) == code
    assert capsys.readouterr().out.splitlines()[0] == first
    if code == 0:
        assert first == f"type {classify_minimal_extension(make(f'ideal_extension({spec})')).tag}"


def test_enumerate_ideals(capsys):
    assert run(["enumerate", "--ideals", "tri(2,2)"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "total 5"
    sizes = [int(line.split()[0]) for line in lines[:-1]]
    assert sizes == sorted(sizes)


def test_enumerate_subrings_over(capsys):
    assert run(["enumerate", "--subrings-over", "ideal_extension(as_rrng(prime_subfield(4)))"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "total 3"


def test_verify_and_bad_suite(capsys):
    assert run(["verify", "--suite", "minimalann", "--max-order", "16"]) == 0
    assert capsys.readouterr().out.splitlines()[-1].startswith("SUITE minimalann: ")
    assert run(["verify", "--suite", "nope"]) == 2


def test_catalog_list_and_emit(capsys):
    assert run(["catalog", "list"]) == 0
    assert "twisted_field/2" in capsys.readouterr().out
    assert run(["catalog", "emit", "gf(4)"]) == 0
    assert parse(capsys.readouterr().out)[0].n == 4
    assert run(["catalog", "emit", "nosuch(1)"]) == 2


def test_runs_are_byte_identical():
    for argv in (["verify", "--suite", "posers", "--max-order", "32"],
                 ["enumerate", "--ideals", "product(gf(2),gf(3))"]):
        a, b = cli(*argv), cli(*argv)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout


def test_jobs_do_not_change_the_report():
    a = cli("verify", "--suite", "annideals", "--max-order", "32", "--jobs", "1")
    b = cli("verify", "--suite", "annideals", "--max-order", "32", "--jobs", "3")
    assert a.stdout == b.stdout and a.returncode == 0
