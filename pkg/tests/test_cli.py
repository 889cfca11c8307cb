import json
import subprocess
import sys
from pathlib import Path

import pytest

from gorenstein import corpus
from gorenstein.cli import build_report, main, report_json

FIXTURES = Path(__file__).parent / "fixtures"
DATA = Path(corpus.data_path("lambda_gf2.json"))

LOCAL_NOT_GORENSTEIN = {
    "field": {"kind": "prime", "p": 2}, "vertices": ["1"],
    "arrows": [{"name": "x", "from": "1", "to": "1"}, {"name": "y", "from": "1", "to": "1"}],
    "relations": [[{"path": ["x", "x"]}], [{"path": ["y", "y"]}], [{"path": ["x", "y"]}], [{"path": ["y", "x"]}]],
}


def run(capsys, *argv):
    code = main(["--no-cache", *argv])
    return code, capsys.readouterr()


def run_json(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    return code, json.loads(out.out)


def test_validate_bundled(capsys):
    for name in ("keps_gf2", "gamma_q", "lambda_gf2", "lambda_q_modules"):
        assert run(capsys, "validate", str(DATA.with_name(f"{name}.json")))[0] == 0


def test_validate_nonassociative_is_invariant_error(capsys):
    code, out = run(capsys, "validate", str(FIXTURES / "nonassociative.json"))
    assert code == 3
    assert "associative" in out.out


@pytest.mark.parametrize("name", ["missing.json", "broken.json", "malformed.json"])
def test_validate_parse_errors(capsys, name):
    assert run(capsys, "validate", str(FIXTURES / name))[0] == 2


def test_gorenstein_command(capsys):
    code, d = run_json(capsys, "gorenstein", "lambda")
    assert code == 0 and d["left"] == d["right"] == 1
    code, d = run_json(capsys, "gorenstein", "gamma*gamma")
    assert code == 0 and d["gorenstein_dimension"] == 2
    code, d = run_json(capsys, "gorenstein", "keps", "--field", "Q")
    assert code == 0 and d["gorenstein_dimension"] == 0


def test_gorenstein_bound_exit(capsys, tmp_path):
    p = tmp_path / "local.json"
    p.write_text(json.dumps(LOCAL_NOT_GORENSTEIN))
    code, d = run_json(capsys, "gorenstein", str(p), "--bound", "3")
    assert code == 4
    assert d["left"] == ">3"


def test_classify(capsys):
    code, d = run_json(capsys, "classify", "lambda")
    assert code == 0
    assert sum(r["gp"] for r in d["rows"].values()) == 5
    assert [k for k, r in d["rows"].items() if r["projective"] and r["injective"]] == ["2/12/1"]
    assert d["summary"]["fail"] == 0


def test_classify_with_module_file(capsys):
    code, d = run_json(capsys, "classify", "lambda", "--modules", str(DATA.with_name("lambda_gf2_modules.json")))
    assert code == 0 and len(d["rows"]) == 9


def test_tau_dot(capsys):
    code, out = run(capsys, "tau", "lambda", "--dot")
    assert code == 0
    assert '"2/1" -> "2" [style=dotted];' in out.out
    assert '"1/1" ->' not in out.out


def test_ar_verify(capsys):
    for alg in ("keps", "gamma", "lambda"):
        code, d = run_json(capsys, "ar-verify", alg)
        assert code == 0 and d["summary"]["pass"] >= 1


@pytest.mark.parametrize("cmd", [["serre", "lambda"], ["serre", "keps"], ["happel", "lambda"], ["happel", "gamma"],
                                 ["kos", "lambda", "1", "1"], ["serre", "lambda", "--pairs", "1,2/1;12/1,1"]])
def test_suite_commands_pass(capsys, cmd):
    code, d = run_json(capsys, *cmd)
    assert code == 0
    assert d["summary"]["fail"] == 0 and d["summary"]["pass"] > 0


def test_hochschild_command(capsys):
    code, d = run_json(capsys, "hochschild", "keps", "--max-degree", "3")
    assert code == 0 and d["dims"] == [2, 2, 2, 2]


def test_enumerate(capsys):
    code, d = run_json(capsys, "enumerate", "gamma", "--caps", "1,1", "--expect", "3")
    assert code == 0 and d["total"] == 3
    assert run(capsys, "enumerate", "gamma", "--caps", "1,1", "--expect", "4")[0] == 5


def test_usage_errors(capsys):
    assert run(capsys, "gorenstein", "no-such-algebra")[0] == 2
    assert run(capsys, "kos", "lambda", "2", "1")[0] == 2
    assert main(["frobnicate"]) == 2


def test_report_deterministic_and_cache_independent(tmp_path, monkeypatch):
    suites = ["gorenstein", "classify", "tau", "serre", "kos"]

    def strip(payload):
        payload = json.loads(report_json(payload))
        payload.pop("timing")
        return json.dumps(payload, sort_keys=True)

    a = strip(build_report("GF(2)", 8, 7, 4, suites))
    b = strip(build_report("GF(2)", 8, 7, 4, suites))
    monkeypatch.setenv("GORENSTEIN_CACHE_DIR", str(tmp_path))
    out = tmp_path / "r.json"
    assert main(["report", "--suites", ",".join(suites), "--seed", "7", "--output", str(out)]) == 0
    c = strip(json.loads(out.read_text()))
    assert a == b == c
    assert (tmp_path / "manifest.json").exists()


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gorenstein.cli", "--no-cache", "gorenstein", "gamma"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "Gorenstein of dimension 1" in proc.stdout
