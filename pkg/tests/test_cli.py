import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

PKG = [sys.executable, "-m", "cherednik"]


def run_cli(args, tmp_path, **kw):
    env = {"CHEREDNIK_CACHE_DIR": str(tmp_path / "cache"), "PATH": "/usr/bin:/bin"}
    return subprocess.run(
        PKG + args, capture_output=True, text=True, env=env, **kw
    )


def record_of(proc):
    return json.loads(proc.stdout.strip().splitlines()[-1])


def strip_timing(d):
    d = dict(d)
    d.pop("timing", None)
    return d


def test_hilbert_t0_match(tmp_path):
    proc = run_cli(["hilbert", "--p", "2", "--n", "5", "--t", "0"], tmp_path)
    assert proc.returncode == 0
    rec = record_of(proc)
    assert rec["series"]["coeffs"] == [1, 4, 4, 1]
    assert rec["conjecture"]["remark_consistent"]["match"] is True
    assert rec["conjecture"]["as_printed"]["match"] is True


def test_hilbert_t0_p3_n7(tmp_path):
    proc = run_cli(["hilbert", "--p", "3", "--n", "7", "--t", "0"], tmp_path)
    assert proc.returncode == 0
    rec = record_of(proc)
    # (1+z+z^2)(1+5z+z^2)
    assert rec["series"]["coeffs"] == [1, 6, 7, 6, 1]


def test_hilbert_degenerate_small_case(tmp_path):
    proc = run_cli(["hilbert", "--p", "2", "--n", "2", "--t", "0"], tmp_path)
    # r = 0 regime: must not crash; mismatch against the product form is a
    # finding (exit 3), not an error
    assert proc.returncode in (0, 3)
    rec = record_of(proc)
    assert rec["status"] == "ok"


def test_hilbert_exit_code_on_mismatch(tmp_path):
    # p=2, n=4, t=1 (p | n): computed (1+z)^3 disagrees with the conjecture
    proc = run_cli(["hilbert", "--p", "2", "--n", "4", "--t", "1"], tmp_path)
    assert proc.returncode == 3
    rec = record_of(proc)
    assert rec["series"]["coeffs"] == [1, 3, 3, 1]
    assert rec["conjecture"]["remark_consistent"]["match"] is False


def test_hilbert_determinism_and_cache(tmp_path):
    args = ["hilbert", "--p", "2", "--n", "3", "--t", "1"]
    first = run_cli(args, tmp_path)
    second = run_cli(args, tmp_path)
    a, b = record_of(first), record_of(second)
    assert b["notes"][-1] == "cache hit"
    a.pop("notes"), b.pop("notes")
    assert strip_timing(a) == strip_timing(b)
    # byte-identical series on the cache hit
    assert json.dumps(a["series"]) == json.dumps(b["series"])
    fresh_rec = record_of(run_cli(args + ["--no-cache"], tmp_path))
    fresh_rec.pop("notes")
    assert strip_timing(fresh_rec) == strip_timing(b)


def test_cache_version_poisoning_ignored(tmp_path):
    cache_file = tmp_path / "cache" / "runs.jsonl"
    cache_file.parent.mkdir(parents=True)
    poisoned = {
        "key": {"p": 2, "n": 3, "t": 1, "c_mode": "generic", "format_version": 0},
        "status": "ok",
        "series": {"coeffs": [9, 9, 9], "provenance": "computed", "factored": None},
        "conjecture": {
            "remark_consistent": {"match": True, "series": [9]},
            "as_printed": {"match": True, "series": [9]},
        },
    }
    cache_file.write_text(json.dumps(poisoned) + "\n")
    proc = run_cli(["hilbert", "--p", "2", "--n", "3", "--t", "1"], tmp_path)
    rec = record_of(proc)
    assert rec["series"]["coeffs"] == [1, 2, 3, 4, 4, 4, 3, 2, 1]


def test_fast_eval_agrees_with_exact(tmp_path):
    exact = run_cli(["hilbert", "--p", "2", "--n", "3", "--t", "1"], tmp_path)
    fast = run_cli(
        ["hilbert", "--p", "2", "--n", "3", "--t", "1", "--fast-eval"], tmp_path
    )
    assert record_of(exact)["series"]["coeffs"] == record_of(fast)["series"]["coeffs"]
    assert any("NOT a certified" in note for note in record_of(fast)["notes"])


def test_check_singular(tmp_path):
    proc = run_cli(
        [
            "check",
            "singular",
            "--poly",
            "x1^2+x1*x2+x2^2",
            "--p",
            "2",
            "--n",
            "5",
            "--t",
            "0",
        ],
        tmp_path,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] is True
    assert "singular" in proc.stderr


def test_check_kernel_with_witness(tmp_path):
    proc = run_cli(
        [
            "check",
            "kernel",
            "--poly",
            "x1^5*x2",
            "--p",
            "2",
            "--n",
            "5",
            "--t",
            "1",
            "--c",
            "generic",
        ],
        tmp_path,
    )
    out = json.loads(proc.stdout)
    assert proc.returncode == 0
    assert out["result"] is False
    assert sum(out["witness"]) == 6
    assert out["witness_value"] != "0"


def test_check_stable(tmp_path):
    proc = run_cli(
        ["check", "stable", "--poly", "x1^4*x2^4", "--p", "2"], tmp_path
    )
    out = json.loads(proc.stdout)
    assert proc.returncode == 0
    assert out["stable"] is True
    assert out["bound"] == 12


def test_check_parse_failure_exit_2(tmp_path):
    proc = run_cli(
        ["check", "singular", "--poly", "x9", "--p", "2", "--n", "5", "--t", "0"],
        tmp_path,
    )
    assert proc.returncode == 2


def test_usage_error_exit_2(tmp_path):
    proc = run_cli(["hilbert", "--p", "2"], tmp_path)
    assert proc.returncode == 2


def test_sweep_and_resume(tmp_path):
    out_dir = tmp_path / "grid"
    args = [
        "sweep",
        "--p-list",
        "2,3",
        "--n-list",
        "3,4",
        "--t",
        "0",
        "--out",
        str(out_dir),
    ]
    proc = run_cli(args, tmp_path)
    assert proc.returncode == 0
    with open(out_dir / "summary.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4
    by_cell = {(r["p"], r["n"]): r for r in rows}
    assert by_cell[("2", "3")]["variant_B_match"] == "True"
    assert by_cell[("2", "3")]["series"] == "1 2 2 1"
    # resumable: a second run hits the cache for every cell
    proc2 = run_cli(args, tmp_path)
    assert proc2.returncode == 0
    assert "cell p=2 n=3" in proc2.stderr


def test_sweep_empty_grid(tmp_path):
    out_dir = tmp_path / "empty"
    proc = run_cli(
        ["sweep", "--p-list", "", "--n-list", "", "--t", "0", "--out", str(out_dir)],
        tmp_path,
    )
    assert proc.returncode == 0
    content = (out_dir / "summary.csv").read_text().strip().splitlines()
    assert len(content) == 1 and content[0].startswith("p,")


def test_dump_kernel_export(tmp_path):
    target = tmp_path / "kernel.json"
    proc = run_cli(
        [
            "hilbert",
            "--p",
            "2",
            "--n",
            "3",
            "--t",
            "0",
            "--dump-kernel",
            str(target),
        ],
        tmp_path,
    )
    assert proc.returncode == 0
    data = json.loads(target.read_text())
    assert data["format_version"] == 1
    assert data["p"] == 2 and data["n"] == 3
    d2 = data["degrees"]["2"]
    assert d2["dim_l"] == 2
    assert all(isinstance(s, str) for s in d2["basis"])


@pytest.mark.slow
def test_selftest_passes(tmp_path):
    proc = run_cli(["selftest"], tmp_path)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
    assert proc.stdout.count("PASS") >= 10
