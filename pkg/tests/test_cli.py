"""The command-line front end."""

import io
import json
import subprocess
import sys

import pytest

from nonnormal.cli import main
from nonnormal.prover import check_proof, proof_from_dict
from nonnormal.syntax import Language


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_examples(capsys):
    code, out, _ = run(capsys, "prove", "--logic", "EC", "[] (~q & r), [] (p & q) => [] false")
    assert code == 0 and out.startswith("RuleEC:")
    code, out, _ = run(capsys, "prove", "--logic", "CKCEM", "=> (p > r) | (q > ~r)")
    assert code == 1 and out.strip() == "unprovable"
    code, _, _ = run(capsys, "prove", "--logic", "K", "p =>")
    assert code == 1


def test_prove_json(capsys):
    code, out, _ = run(capsys, "prove", "--json", "--logic", "K", "[]p, [](p -> q) => []q")
    rec = json.loads(out)
    assert code == 0 and rec["result"] == "provable"
    assert check_proof("K", proof_from_dict(rec["proof"]))


def test_usage_errors(capsys):
    assert run(capsys, "prove", "--logic", "K", "p & => q")[0] == 2
    assert run(capsys, "prove", "--logic", "K", "p > q =>")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["prove", "--logic", "S5", "p => p"])
    assert e.value.code == 2
    code, out, err = run(capsys, "interp", "--json", "--logic", "CKCEM", "--atom", "p",
                         "--pol", "pos", "p > q")
    assert code == 2 and "uniform Lyndon interpolation" in err
    assert "error" in json.loads(out)


def test_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, "prove", "--logic", "K", stdin="p => p\n", monkeypatch=monkeypatch)
    assert code == 0 and out.startswith("Ax:")
    assert run(capsys, "prove", "--logic", "K", stdin="  \n", monkeypatch=monkeypatch)[0] == 2


def test_interp_exists(capsys):
    code, out, _ = run(capsys, "interp", "--json", "--logic", "K", "--atom", "p", "--pol", "pos",
                       "--quant", "exists", "[](p & q)")
    rec = json.loads(out)
    assert code == 0
    assert rec["interpolant"] == "[]q"
    assert rec["report"]["violations"] == []


def test_interp_neg_atom(capsys):
    code, out, _ = run(capsys, "interp", "--logic", "M", "--atom", "p", "--pol", "neg", "p")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "p" and lines[1].endswith(": ok")


def test_interp_sequent_and_plain(capsys):
    code, out, _ = run(capsys, "interp", "--json", "--logic", "CKCEM", "--atom", "p",
                       "--pol", "plain", "p > q => q > q")
    rec = json.loads(out)
    assert code == 0 and rec["report"]["query"]["pol"] == "plain"
    code, _, _ = run(capsys, "interp", "--logic", "K", "--atom", "p", "--quant", "exists",
                     "p => q")
    assert code == 2


def test_interp_no_verify(capsys):
    code, out, _ = run(capsys, "interp", "--json", "--no-verify", "--logic", "K", "--atom", "p",
                       "[]p | q")
    rec = json.loads(out)
    assert code == 0 and "report" not in rec


def test_craig(capsys):
    text = "[](~q & r) => [](p & q) -> []false"
    code, out, _ = run(capsys, "craig", "--logic", "EC", "--alphabet", "q", text)
    assert code == 1 and out.startswith("no interpolant")
    code, out, _ = run(capsys, "craig", "--json", "--logic", "K", "--alphabet", "q", text)
    rec = json.loads(out)
    assert code == 0 and rec["result"] == "found"
    code, out, _ = run(capsys, "craig", "--logic", "K", "p => q")
    assert code == 1 and out.strip() == "implication unprovable"
    assert run(capsys, "craig", "--logic", "K", "p, q => q")[0] == 2


def test_check_and_cutelim_round_trip(capsys, monkeypatch):
    _, out, _ = run(capsys, "prove", "--json", "--logic", "CK", "p > q, p > r => p > (q & r)")
    rec = json.loads(out)
    code, out, _ = run(capsys, "check", "--logic", "CK", stdin=json.dumps(rec),
                       monkeypatch=monkeypatch)
    assert code == 0 and out.strip() == "valid"
    # wrong rules for the logic, and wrong language for it
    assert run(capsys, "check", "--logic", "CE", json.dumps(rec["proof"]))[0] == 1
    assert run(capsys, "check", "--logic", "E", json.dumps(rec["proof"]))[0] == 2

    # a proof with one cut on p > (q & r)
    left = json.loads(run(capsys, "prove", "--json", "--logic", "CK",
                          "p > q, p > r => p > (q & r)")[1])["proof"]
    right = json.loads(run(capsys, "prove", "--json", "--logic", "CK",
                           "p > (q & r) => p > q")[1])["proof"]
    cut = {"rule": "Cut", "sequent": "p > q, p > r => p > q", "premises": [left, right]}
    assert run(capsys, "check", "--logic", "CK", json.dumps(cut))[0] == 1
    assert run(capsys, "check", "--allow-cut", "--logic", "CK", json.dumps(cut))[0] == 0
    code, out, _ = run(capsys, "cutelim", "--json", "--logic", "CK", json.dumps(cut))
    rec = json.loads(out)
    assert code == 0 and rec["sequent"] == "p > q, p > r => p > q"
    assert "Cut" not in json.dumps(rec["proof"])
    assert check_proof("CK", proof_from_dict(rec["proof"], Language.CONDITIONAL))


def test_bad_proof_input(capsys):
    assert run(capsys, "check", "--logic", "K", "{not json")[0] == 2
    assert run(capsys, "check", "--logic", "K", '{"rule": "Ax"}')[0] == 2
    bad = json.dumps({"rule": "Ax", "sequent": "p => q", "premises": []})
    assert run(capsys, "check", "--logic", "K", bad)[0] == 1
    assert run(capsys, "cutelim", "--logic", "K", bad)[0] == 2


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1,6")
    assert code == 0
    assert "criterion 1 axiom regression matrix: PASS" in out
    assert "criterion 6 CKCEM Lyndon interpolation failure: PASS" in out
    assert "criterion 2" not in out


def test_entry_point_runs_as_a_module():
    r = subprocess.run([sys.executable, "-m", "nonnormal", "prove", "--logic", "K", "=> []p"],
                       capture_output=True, text=True)
    assert r.returncode == 1 and r.stdout.strip() == "unprovable"
    r = subprocess.run([sys.executable, "-m", "nonnormal", "prove", "--logic", "K"],
                       input="[]p => []p", capture_output=True, text=True)
    assert r.returncode == 0
