"""Command-line behavior: exit codes, output shapes, file handling."""

import json
import shutil
import subprocess

import pytest

from querysynth import cli
from querysynth.boolfun import table_exact, table_parity
from querysynth.qprogram import Output, parity_program, program_to_json
from querysynth.synth import VerificationReport, certificate_from_json


def run_cli(capsys, *argv):
    rc = cli.main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


# ---------------------------------------------------------------------------
# analyze


def test_analyze_human_symmetric(capsys):
    rc, out, err = run_cli(capsys, "analyze", "--fn", "profile:0,1,0,1,0")
    assert rc == 0 and err == ""
    assert "symmetric:      01010" in out
    assert "degree:         4" in out
    assert "depth:          4" in out
    assert "AND-isomorphic: no" in out


def test_analyze_json_fields(capsys):
    rc, out, _ = run_cli(capsys, "analyze", "--fn", "hex:8000",
                         "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert obj["schema"] == 1 and obj["kind"] == "analysis"
    assert obj["arity"] == 4
    assert obj["popcount"] == 1
    assert obj["monotone"] is True
    assert obj["andIsomorphic"] is True
    assert obj["symmetricProfile"] == [0, 0, 0, 0, 1]
    assert obj["readOnce"] == "(x1 & x2 & x3 & x4)"


def test_analyze_read_once_rendering(capsys):
    rc, out, _ = run_cli(capsys, "analyze", "--fn", "formula:x1&(x2|~x3)",
                         "--format", "json")
    assert rc == 0
    assert json.loads(out)["readOnce"] == "(x1 & (x2 | ~x3))"


def test_analyze_non_read_once(capsys):
    rc, out, _ = run_cli(capsys, "analyze", "--fn", "bin:0110",
                         "--format", "json")
    assert rc == 0
    assert json.loads(out)["readOnce"] is None


def test_analyze_bad_function(capsys):
    rc, _, err = run_cli(capsys, "analyze", "--fn", "hex:zz")
    assert rc == 2
    assert err.startswith("error:")


def test_analyze_writes_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    rc, out, _ = run_cli(capsys, "analyze", "--fn", "bin:0110",
                         "--out", str(target))
    assert rc == 0
    obj = json.loads(target.read_text())
    assert obj["kind"] == "analysis" and obj["arity"] == 2


# ---------------------------------------------------------------------------
# synth


def test_synth_human_summary(capsys):
    rc, out, err = run_cli(capsys, "synth", "--fn", "hex:8000")
    assert rc == 0 and err == ""
    assert "4 queries" in out
    assert "ClassicalOnly" in out
    assert "optimal" in out


def test_synth_json_payload(capsys):
    rc, out, _ = run_cli(capsys, "synth", "--fn", "profile:0,1,0,1",
                         "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert obj["kind"] == "synthesis"
    assert obj["certificate"]["claimedQueries"] == 2
    assert obj["verification"] == {"ok": True, "level": "FullySimulated"}


def test_synth_out_file_is_a_loadable_certificate(tmp_path, capsys):
    target = tmp_path / "cert.json"
    rc, _, _ = run_cli(capsys, "synth", "--fn", "profile:0,1,0,1,0",
                       "--out", str(target))
    assert rc == 0
    cert = certificate_from_json(json.loads(target.read_text()))
    assert cert.function == table_parity(4)
    assert cert.claimed_queries == 2


def test_synth_refuses_unverified(monkeypatch, capsys):
    bad = VerificationReport(False, "ClassicalOnly", ("deliberate failure",))
    monkeypatch.setattr(cli, "verify_certificate", lambda cert: bad)
    rc, out, err = run_cli(capsys, "synth", "--fn", "hex:8000")
    assert rc == 1
    assert out == ""
    assert "refusing to emit an unverified certificate" in err
    assert "deliberate failure" in err


# ---------------------------------------------------------------------------
# simulate


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_simulate_certificate_file(tmp_path, capsys):
    target = tmp_path / "cert.json"
    run_cli(capsys, "synth", "--fn", "profile:0,1,0,1,0", "--out", str(target))
    rc, out, _ = run_cli(capsys, "simulate", str(target))
    assert rc == 0
    assert "exact:                yes" in out


def test_simulate_bare_program_needs_fn(tmp_path, capsys):
    path = _write(tmp_path, "prog.json", program_to_json(parity_program(2)))
    rc, _, err = run_cli(capsys, "simulate", path)
    assert rc == 2
    assert "needs --fn" in err
    rc, out, _ = run_cli(capsys, "simulate", path, "--fn", "bin:0110",
                         "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert obj["kind"] == "simulation"
    assert obj["report"]["exact"] is True
    assert obj["report"]["queriesWorstCase"] == 1


def test_simulate_reports_failing_inputs(tmp_path, capsys):
    path = _write(tmp_path, "const.json", program_to_json(Output(1)))
    rc, out, _ = run_cli(capsys, "simulate", path, "--fn", "bin:0110",
                         "--format", "json")
    assert rc == 1
    obj = json.loads(out)
    assert obj["report"]["exact"] is False
    assert obj["failingInputs"] == [0, 3]
    rc, out, _ = run_cli(capsys, "simulate", path, "--fn", "bin:0110")
    assert rc == 1
    assert "failing inputs:       00, 11" in out


def test_simulate_axiom_certificates_are_refused(tmp_path, capsys):
    target = tmp_path / "cert.json"
    run_cli(capsys, "synth", "--fn", table_exact(4, 2).to_hex_text(),
            "--out", str(target))
    rc, _, err = run_cli(capsys, "simulate", str(target))
    assert rc == 1
    assert "not simulatable: axiom leaf at" in err


def test_simulate_unreadable_or_garbage_files(tmp_path, capsys):
    rc, _, err = run_cli(capsys, "simulate", str(tmp_path / "missing.json"))
    assert rc == 2 and "cannot read" in err
    path = _write(tmp_path, "junk.json", [1, 2, 3])
    rc, _, err = run_cli(capsys, "simulate", path)
    assert rc == 2 and "not a program or certificate" in err


# ---------------------------------------------------------------------------
# verify


def test_verify_single_suite_human(capsys):
    rc, out, err = run_cli(capsys, "verify", "--suite", "counting")
    assert rc == 0 and err == ""
    assert out.startswith("counting:")
    assert "passed over" in out


def test_verify_json_reports(capsys):
    rc, out, _ = run_cli(capsys, "verify", "--suite", "counting",
                         "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert obj["kind"] == "verification"
    assert [r["suite"] for r in obj["reports"]] == ["counting"]
    assert obj["reports"][0]["failed"] == 0


def test_verify_multiple_suites(capsys):
    rc, out, _ = run_cli(capsys, "verify", "--suite", "counting,sample5",
                         "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert [r["suite"] for r in obj["reports"]] == ["counting", "sample5"]


def test_verify_unknown_suite(capsys):
    rc, _, err = run_cli(capsys, "verify", "--suite", "everything")
    assert rc == 2
    assert "unknown suite" in err


def test_verify_reports_failures_with_exit_1(monkeypatch, capsys):
    from querysynth.suites import SuiteReport

    def fake(name, max_n=None, seed=0, jobs=1):
        return SuiteReport(name, 5, 5, 4, 1, ["one bad case"], 0.01, {})

    monkeypatch.setattr(cli, "run_suite", fake)
    rc, out, _ = run_cli(capsys, "verify", "--suite", "counting")
    assert rc == 1
    assert "FAIL one bad case" in out


def test_verify_max_n_env_and_flag(monkeypatch, capsys):
    monkeypatch.setenv("QUERYSYNTH_MAX_N", "4")
    rc, out, _ = run_cli(capsys, "verify", "--suite", "symmetric",
                         "--format", "json")
    assert rc == 0
    assert json.loads(out)["reports"][0]["population"] == 4 + 8 + 16 + 32
    # an explicit flag wins over the environment
    rc, out, _ = run_cli(capsys, "verify", "--suite", "symmetric",
                         "--max-n", "3", "--format", "json")
    assert rc == 0
    assert json.loads(out)["reports"][0]["population"] == 4 + 8 + 16


def test_verify_bad_env_value(monkeypatch, capsys):
    monkeypatch.setenv("QUERYSYNTH_MAX_N", "four")
    rc, _, err = run_cli(capsys, "verify", "--suite", "counting")
    assert rc == 2
    assert "QUERYSYNTH_MAX_N" in err


# ---------------------------------------------------------------------------
# entry point wiring


def test_console_script_installed():
    exe = shutil.which("querysynth")
    assert exe, "console script not on PATH"
    proc = subprocess.run([exe, "analyze", "--fn", "bin:0110"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "symmetric:      010" in proc.stdout
