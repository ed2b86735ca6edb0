"""Command-line smoke tests: output schema and exit codes."""

import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("PANDORA_CLI", "build/pandora")
DATA = Path(os.environ.get("PANDORA_DATA", "data"))


def run(*args, expect=0):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, timeout=300)
    assert proc.returncode == expect, (proc.returncode, proc.stdout[-2000:], proc.stderr[-2000:])
    return proc


def run_json(*args, expect=0):
    return json.loads(run(*args, expect=expect).stdout)


def test_solve_adaptive_example1():
    r = run_json("solve", "--class", "adaptive", "-i", DATA / "example1.json")
    assert r["utility"] == "21/2"
    assert r["unique"] is True
    assert r["witness"]["open"] == 0
    assert r["queries_used"] > 0
    assert len(r["instance_digest"]) == 16
    assert "wall_seconds" in r


@pytest.mark.parametrize("cls,expected", [("fixed", "10"), ("adaptive", "21/2")])
def test_solve_by_canonical_name(cls, expected):
    assert run_json("solve", "--class", cls, "-i", "example1")["utility"] == expected


def test_solve_impulsive_unit_demand():
    r = run_json("solve", "--class", "impulsive", "-i", DATA / "unit_demand_pair.json")
    assert r["utility"] == "1/9"
    assert r["witness"]["order"] == [0, 1]


def test_weitzman_rejects_non_additive_cost():
    p = run("solve", "--class", "weitzman", "-i", "unit_demand_pair", expect=2)
    assert "additive" in p.stderr


def test_validate_example1_submodular_fails_with_witness():
    r = run_json("validate", "--class", "submodular", "-i", DATA / "example1.json", expect=1)
    assert r["validation"]["pass"] is False
    assert r["validation"]["witness"]["sets"]


def test_validate_accepts_bare_cost_file(tmp_path):
    cost = {"kind": "additive", "per_box": ["1", "2", "3"]}
    f = tmp_path / "cost.json"
    f.write_text(json.dumps(cost))
    assert run_json("validate", "--class", "submodular", "-i", f)["validation"]["pass"] is True


def test_gap_on_xos_lift_is_strict():
    r = run_json("gap", "-i", DATA / "xos_lift.json")
    assert r["gap"]["strict_gap"]["adaptive_vs_fixed"] is True
    assert r["gap"]["opt_adaptive"] == "69/4"


def test_parse_error_reports_line_and_column(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "boxes": [,\n}\n')
    p = run("solve", "--class", "adaptive", "-i", bad, expect=2)
    assert "line 2, column 13" in p.stderr


def test_capability_error_exit_code():
    p = run("solve", "--class", "adaptive", "-i", "hardness_baseline_100000", expect=3)
    assert "capability" in p.stderr


def test_usage_errors():
    run("frobnicate", expect=2)
    run("solve", "-i", "example1", expect=2)  # --class missing
    run("solve", "--class", "sideways", "-i", "example1", expect=2)
    run("hardness", "--n", "2", expect=2)


def test_transform_round_trip(tmp_path):
    out = tmp_path / "d.json"
    r = run_json("transform", "-i", DATA / "subadditive4.json", "--op", "discretize",
                 "--epsilon", "1/1000", "-o", out)
    assert r["kappa"]
    reloaded = run_json("instance", "-i", out)
    assert reloaded == json.loads(out.read_text())
    lifted = tmp_path / "b.json"
    r = run_json("transform", "-i", "example1", "--op", "bernoullify", "-o", lifted)
    assert r["map"]["original_size"] == 3
    assert run_json("instance", "-i", lifted) == json.loads(lifted.read_text())


def test_hardness_verify_and_agreement():
    r = run_json("hardness", "--n", "100000", "--cmd", "verify")
    assert r["family"]["pass"] is True
    assert r["banner"]
    r = run_json("hardness", "--n", "16", "--override-alpha", "6", "--override-beta", "2",
                 "--cmd", "agreement")
    assert r["agreement"]["agree_violations"] == 0


def test_hardness_distinguish_counts_queries():
    r = run_json("hardness", "--n", "4096", "--cmd", "distinguish", "--trials", "500",
                 "--queries", "3", "--budget", "3")
    d = r["distinguish"]
    assert d["counts_exact"] is True
    assert d["total_queries"] == 1500


def test_corpus_and_verify():
    assert "example1" in run_json("corpus", "list")["entries"]
    run_json("corpus")
    r = run_json("verify", "--theorem", "T31", "--trials", "10")
    assert r["pass"] is True
    assert r["suites"][0]["trials"] == 10
    run("verify", "--theorem", "T99", expect=2)


def test_verify_is_deterministic():
    a = run("verify", "--theorem", "chain", "--trials", "15", "--seed", "7").stdout
    b = run("verify", "--theorem", "chain", "--trials", "15", "--seed", "7", "--jobs", "3").stdout
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "command"}
    assert strip(a) == strip(b)


def test_human_output():
    out = run("solve", "--class", "adaptive", "-i", "example1", "--human").stdout
    assert "utility: 21/2" in out
