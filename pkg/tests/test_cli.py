import json

import pytest

from szero import report
from szero.cli import ParseError, main, parse_word
from szero.engine import Etok, Ftok, Psi, Word


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_word():
    w = parse_word("E[1,-2] F[1,2] @ (0,3)")
    assert w == Word((Etok(1, -2), Ftok(1, 2)), (0, 3))
    w = parse_word("Psi[+,1,-3]F[1,0]@(2, 2)")
    assert w.tokens == (Psi("+", 1, -3), Ftok(1, 0))
    assert parse_word("@ (1,2)") == Word((), (1, 2))


@pytest.mark.parametrize("text,pos", [
    ("F[1,0] G @ (0,3)", 7),
    ("F[1,0] @ 0,3", 8),
    ("F[1,0]", 6),
    ("F[2,0] @ (0,3)", 0),
])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_word(text)
    assert exc.value.pos == pos
    assert "^" in str(exc.value)


def test_verify_sod_examples(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify-sod", "--n", "2", "--N", "4", "--k", "2", "--side", "both",
                       "--json", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert set(doc) >= {"schema", "config", "certificates", "relations", "crosschecks", "status"}
    assert doc["schema"] == 1 and doc["status"] == "VALID"
    assert [c["status"] for c in doc["certificates"]] == ["VALID", "VALID"]
    assert [c["collection"]["size"] for c in doc["certificates"]] == [6, 6]
    code, out, _ = run(capsys, "verify-sod", "--n", "3", "--N", "3", "--k", "1,1,1")
    assert code == 0 and "6 members" in out


@pytest.mark.parametrize("argv", [
    ["verify-sod", "--N", "1"],
    ["verify-sod", "--N", "9"],
    ["verify-sod", "--N", "3", "--k", "5"],
    ["verify-sod", "--N", "3", "--k", "x"],
    ["verify-sod", "--n", "1", "--N", "3"],
    ["verify-sod", "--n", "3", "--N", "3", "--side", "E"],
    ["check-relations", "--N", "3", "--relations", "U02"],
    ["check-relations", "--N", "3", "--relations", "U08"],
    ["check-relations", "--N", "3", "--relations", "U99"],
    ["eval-word", "F[1,0] G @ (0,3)"],
    ["eval-word", "F[1,0] @ (-1,3)"],
    ["no-such-command"],
    ["verify-sod", "--side", "X"],
])
def test_config_errors_exit_64(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 64


def test_max_n_env(capsys, monkeypatch):
    monkeypatch.setenv("SZERO_MAX_N", "3")
    assert run(capsys, "verify-sod", "--N", "4")[0] == 64
    code, out, _ = run(capsys, "verify-sod")
    assert code == 0 and "N=4" not in out
    monkeypatch.setenv("SZERO_MAX_N", "abc")
    assert run(capsys, "verify-sod", "--N", "3")[0] == 64


def test_out_of_scope_notice(capsys):
    code, _, err = run(capsys, "check-relations", "--N", "3", "--relations", "U02")
    assert code == 64 and "out of scope: h-generators" in err


def test_check_relations(capsys, tmp_path):
    md = tmp_path / "r.md"
    code, out, _ = run(capsys, "check-relations", "--N", "3", "--md", str(md))
    assert code == 0 and "status: PASS" in out
    assert "| U04 | 3 |" in md.read_text()


def test_eval_word_examples(capsys):
    code, out, _ = run(capsys, "eval-word", "E[1,-2] F[1,2] @ (0,3)")
    assert code == 0 and "engine:  Psi[-,1,1] @ (0,3)[-1]" in out
    code, out, _ = run(capsys, "eval-word", "@ (1,2)")
    assert code == 0 and "engine:  Identity" in out
    code, out, _ = run(capsys, "eval-word", "F[1,2]", "F[1,1]", "@", "(0,4)")
    assert code == 0 and "oracle:  S_(2, 1)V in degree 0 on Gr(2,4)" in out
    code, out, _ = run(capsys, "eval-word", "--chain", "E[1,-2] F[1,2] @ (0,3)")
    assert "6b" in out


def test_dual_pairing_and_kapranov(capsys):
    code, out, _ = run(capsys, "dual-pairing", "--N", "3")
    assert code == 0 and "NO" not in out
    code, out, _ = run(capsys, "verify-kapranov", "--N", "4", "--k", "2")
    assert code == 0 and "Gr(2,4)" in out


def test_cross_check_cli(capsys):
    code, out, _ = run(capsys, "cross-check", "--N", "4", "--k", "2")
    assert code == 0 and "21 agree, 15 engine-incomplete, 0 mismatches" in out


def test_report_byte_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify-sod", "--N", "4", "--side", "both", "--json", str(a))[0] == 0
    assert run(capsys, "verify-sod", "--N", "4", "--side", "both", "--jobs", "2",
               "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_timing_only_on_request(capsys, tmp_path):
    a = tmp_path / "a.json"
    run(capsys, "verify-sod", "--N", "3", "--json", str(a))
    assert "timing" not in json.loads(a.read_text())
    run(capsys, "verify-sod", "--N", "3", "--json", str(a), "--timing")
    assert "total" in json.loads(a.read_text())["timing"]


def test_chains_are_replayable(capsys, tmp_path):
    a = tmp_path / "a.json"
    run(capsys, "verify-sod", "--N", "3", "--k", "1", "--chains", "--json", str(a))
    cert = json.loads(a.read_text())["certificates"][0]
    for rec in cert["self"] + cert["pairs"]:
        assert rec["digest"] == report.chain_digest(rec["chain"])
        assert {s["clause"] for s in rec["chain"]} <= {
            "4a", "4b", "5a", "5b", "6a", "6b", "6c", "U03", "weight-zero"}


def test_atomic_write_leaves_no_temp(tmp_path):
    p = tmp_path / "x.json"
    report.atomic_write(str(p), "one")
    report.atomic_write(str(p), "two")
    assert p.read_text() == "two"
    assert [f.name for f in tmp_path.iterdir()] == ["x.json"]


def test_exit_code_is_function_of_status(capsys, monkeypatch):
    from szero import cli

    class Fake:
        def __init__(self, status):
            self.status = status
            self.members, self.pairs = [], []

    for status, code in [("VALID", 0), ("INVALID", 2), ("INVALID-INCOMPLETE", 3)]:
        monkeypatch.setattr(cli, "verify_collection", lambda spec, **kw: Fake(status))
        monkeypatch.setattr(cli.report, "certificate", lambda c, chains: {"status": c.status})
        assert run(capsys, "verify-sod", "--N", "3", "--k", "1")[0] == code
