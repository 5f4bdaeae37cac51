import json
import subprocess
import sys

import pytest

from qloop.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, run_task


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "qloop.cli"] + args,
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_mul_task(tmp_path):
    task = {
        "datum": {"preset": "sl2"},
        "command": "mul",
        "params": {
            "a": {"side": "+", "n": [1], "terms": [[[0], "1"]]},
            "b": {"side": "+", "n": [1], "terms": [[[0], "1"]]},
        },
    }
    report = run_task(task)
    assert report["result"]["terms"] == [[[0, 0], "(1 + 1*q^2)/(1*q^2)"]]


def test_pair_residue_task_agrees():
    task = {
        "datum": {"preset": "sl2"},
        "command": "pair-residue",
        "params": {
            "E": {"side": "+", "n": [1], "terms": [[[1], "1"]]},
            "F": {"side": "-", "n": [1], "terms": [[[-1], "1"]]},
        },
    }
    report = run_task(task)
    assert report["result"]["agree"] is True


def test_basis_task():
    task = {
        "datum": {"preset": "sl2"},
        "command": "basis",
        "params": {"side": "+", "n": [2], "d": 0,
                   "window": {"lo": ["0"], "hi": ["0"]}},
    }
    report = run_task(task)
    assert report["dimension"] == 1


def test_malformed_datum_is_usage_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "colors": ["1"],
        "zeta": [{"i": "1", "j": "1", "num": [[0, "1"]],
                  "den": [[0, "1"], [1, "-2"], [2, "1"]]}]}))
    task = tmp_path / "task.json"
    task.write_text(json.dumps({"datum": str(bad), "command": "mul",
                                "params": {}}))
    code = main(["task", "--task", str(task)])
    assert code == EXIT_USAGE


def test_unknown_suite_is_usage_error():
    assert main(["verify", "--suite", "no-such-suite"]) == EXIT_USAGE


def test_verify_suite_and_determinism(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["verify", "--suite", "theorem-affine-sl2",
                 "--out", str(out1)]) == EXIT_OK
    assert main(["verify", "--suite", "theorem-affine-sl2",
                 "--out", str(out2)]) == EXIT_OK
    r1 = json.loads(out1.read_text())
    r2 = json.loads(out2.read_text())
    r1["result"]["theorem-affine-sl2"].pop("seconds")
    r2["result"]["theorem-affine-sl2"].pop("seconds")
    assert r1 == r2


def test_checkpoint_resume(tmp_path):
    ck = tmp_path / "ck.json"
    assert main(["verify", "--suite", "theorem-affine-sl2",
                 "--checkpoint", str(ck),
                 "--out", str(tmp_path / "o.json")]) == EXIT_OK
    saved = json.loads(ck.read_text())
    assert saved["theorem-affine-sl2"]["passed"] is True
    # poison the checkpoint: resume must reuse it without rerunning
    saved["theorem-affine-sl2"]["marker"] = "resumed"
    ck.write_text(json.dumps(saved))
    out = tmp_path / "o2.json"
    assert main(["verify", "--suite", "theorem-affine-sl2",
                 "--checkpoint", str(ck), "--out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["result"]["theorem-affine-sl2"].get("marker") == "resumed"


def test_coproduct_task():
    task = {
        "datum": {"preset": "sl2"},
        "command": "newnew",
        "params": {"side": "plus", "eword": [[0, 0]], "fword": [],
                   "p": ["0"], "left_hdeg": [0], "left_vdeg": 0},
    }
    report = run_task(task)
    assert len(report["result"]) == 1
