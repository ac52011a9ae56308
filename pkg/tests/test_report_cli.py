import json
import subprocess
import sys

import pytest

from pbl.cli import run_command
from pbl.report import Check, VerificationReport, emit_report
from pbl.verify import ACCEPTANCE, CRITERIA, RunConfig, flagged_checks


def test_empty_report_is_header_only():
    out = emit_report(VerificationReport(seed=3), "table")
    assert out.count("\n") == 1 and out.startswith("verification report")


def test_failing_check_gets_a_fail_section():
    r = VerificationReport(seed=0)
    r.add(Check("m", "x", "fail", 1, 2, "plumbing", ("why",)))
    out = emit_report(r, "table")
    assert "\nFAIL\n" in out and "expected: 1" in out and "computed: 2" in out
    assert not r.ok


def test_flagged_never_renders_as_fail():
    r = VerificationReport(seed=0, checks=flagged_checks())
    out = emit_report(r, "table")
    assert r.ok
    assert "FAIL" not in out.replace("FLAGGED", "")
    assert "FLAGGED" in out


def test_checks_sorted_and_validated():
    r = VerificationReport(seed=0)
    r.add(Check("b", "z", "pass", 0, 0, "a"))
    r.add(Check("a", "y", "pass", 0, 0, "a"))
    assert [c["module"] for c in r.to_json()["checks"]] == ["a", "b"]
    with pytest.raises(ValueError):
        Check("a", "b", "maybe", 0, 0, "x")
    with pytest.raises(ValueError):
        Check("a", "b", "pass", 0, 0, "")


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(image_samples=0)
    with pytest.raises(ValueError):
        RunConfig(radius=0)
    assert RunConfig().seed == 0xD8B5


def test_criteria_are_one_to_one_with_checks():
    assert sorted(CRITERIA) == list(range(1, 12))
    assert len(set(CRITERIA.values())) == 11 == len(ACCEPTANCE)


def _run(argv, capsys):
    code = run_command(argv)
    return code, capsys.readouterr()


def test_cone_command(capsys):
    code, out = _run(["bundle", "cone", "--tag", "type1", "--n", "2", "--r", "3", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out.out)
    assert data["c"] == "2" and data["fano"]["fano"]


def test_missing_file_is_bad_input(capsys):
    code, out = _run(["pencil", "normalize", "missing.json"], capsys)
    assert code == 2 and "missing.json" in out.err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run_command(["bundle"])
    assert exc.value.code == 2


def test_pencil_commands(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"A": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]],
                                "B": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    code, out = _run(["pencil", "normalize", str(path)], capsys)
    assert code == 0 and json.loads(out.out)["t"] == 2
    code, out = _run(["pencil", "check", str(path), "--format", "table"], capsys)
    assert code == 0 and "regular" in out.out
    path.write_text(json.dumps({"A": [[1, 0, 0]] * 4, "B": [[1, 0, 0]] * 4}))
    code, _ = _run(["pencil", "normalize", str(path)], capsys)
    assert code == 1


def test_bundle_commands(capsys, tmp_path):
    code, out = _run(["bundle", "fiber", "--tag", "type5", "--t", "2", "--x", "1,0,0,0"], capsys)
    assert code == 0 and json.loads(out.out)["fiber"]["description"] == "LinearPk"
    code, out = _run(["bundle", "image", "--tag", "sectionfstar", "--r", "0", "--x", "0,1,0,0,0,0"], capsys)
    assert json.loads(out.out)["on_image"] is True
    code, out = _run(["bundle", "sections", "--tag", "type1", "--r", "2", "--a", "1", "--b", "2"], capsys)
    assert json.loads(out.out)["dimension"] == 1
    code, out = _run(["bundle", "catalog", "--tag", "custom", "--twists", "3,0"], capsys)
    path = tmp_path / "b.json"
    path.write_text(out.out)
    code, out = _run(["bundle", "sections", "--file", str(path), "--a", "1", "--b", "3"], capsys)
    assert code == 0 and json.loads(out.out)["dimension"] == 1
    code, _ = _run(["bundle", "cone", "--tag", "custom", "--twists", "1"], capsys)
    assert code == 2


def test_geom_and_drum_commands(capsys):
    code, out = _run(["geom", "locus", "--t", "2", "--check", "1,2,4,8"], capsys)
    assert code == 0 and json.loads(out.out)["on_locus"] is True
    code, out = _run(["geom", "smooth-scan", "--n", "2", "--d", "3", "--radius", "1"], capsys)
    assert code == 0 and json.loads(out.out)["mismatches"] == []
    code, out = _run(["drum", "check", "--id", "Segre-P2xP1"], capsys)
    assert code == 0 and json.loads(out.out)["flip"]["kind"] == "Flip"
    code, out = _run(["drum", "list", "--format", "table"], capsys)
    assert code == 0 and "PT-P2" in out.out
    code, _ = _run(["drum", "check"], capsys)
    assert code == 2


def test_json_output_is_deterministic(capsys):
    argv = ["bundle", "cone", "--tag", "type5", "--t", "3"]
    _, a = _run(argv, capsys)
    _, b = _run(argv, capsys)
    assert a.out == b.out


def test_seed_env_override(monkeypatch, capsys):
    monkeypatch.setenv("PBL_SEED", "nonsense")
    code, _ = _run(["drum", "list"], capsys)
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pbl", "drum", "check", "--id", "PT-P3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["degree_identity"]["pass"] is True
