"""Runs the eleven acceptance criteria through the command-line runner at seed 1, with exact comparisons."""

import json
import subprocess
import sys

import pytest

from pbl.verify import CRITERIA

SEED = "1"


def _verify_all() -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "pbl", "verify-all", "--seed", SEED, "--format", "json"],
        capture_output=True,
        text=True,
        timeout=600,
    )


@pytest.fixture(scope="module")
def runs():
    return _verify_all(), _verify_all()


def _status(runs, name):
    first, _ = runs
    checks = {c["name"]: c for c in json.loads(first.stdout)["checks"]}
    return checks[name]


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, runs, capsys):
    name = CRITERIA[number]
    if name == "determinism":
        a, b = runs
        ok = a.stdout == b.stdout and _status(runs, name)["status"] == "pass"
    else:
        check = _status(runs, name)
        ok = check["status"] == "pass"
    with capsys.disabled():
        print(f"\ncriterion {number:>2} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok


def test_runner_exit_code(runs):
    first, second = runs
    assert first.returncode == 0 == second.returncode
    report = json.loads(first.stdout)
    assert report["summary"]["fail"] == 0
    assert report["seed"] == int(SEED)
