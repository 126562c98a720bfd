"""Command-line surface: exit codes, JSON payloads, file outputs, rerun
stability. Every invocation goes through a real subprocess so argument
parsing, error routing, and stream separation are exercised end to end."""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "quasiwide.cli"]


def run(*argv, check=False):
    proc = subprocess.run(
        CLI + list(argv), capture_output=True, text=True, timeout=120
    )
    if check and proc.returncode != 0:
        raise AssertionError(
            f"exit {proc.returncode}\nstdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


@pytest.fixture()
def grid32(tmp_path):
    path = tmp_path / "g32.el"
    run("gen", "--family", "grid", "--params", "w=3,h=2", "--out", str(path), check=True)
    return str(path)


def test_gen_stdout_frozen():
    proc = run("gen", "--family", "path", "--params", "n=4", check=True)
    assert proc.stdout == "n=4\n0 1\n1 2\n2 3\n"


def test_gen_seeded_family_frozen():
    proc = run(
        "gen", "--family", "random_degenerate", "--params", "n=8,c=2,seed=1",
        check=True,
    )
    lines = proc.stdout.splitlines()
    assert lines[0] == "n=8"
    assert lines[1:4] == ["0 1", "0 2", "1 2"]
    assert len(lines) == 14


def test_gen_rejects_unknown_family():
    proc = run("gen", "--family", "moebius", "--params", "n=4")
    assert proc.returncode == 1
    assert "error:" in proc.stderr


def test_uqw_json_payload(grid32):
    proc = run("uqw", "--graph", grid32, "--A", "all", "--r", "2", "--m", "3", check=True)
    doc = json.loads(proc.stdout)
    assert doc["command"] == "uqw"
    assert doc["input"] == {"n": 6, "m": 7, "degeneracy": 2}
    assert doc["result"]["S"] == []
    assert doc["result"]["B"] == [0]
    assert doc["verified"]["independent"] is True
    assert [r["round"] for r in doc["result"]["rounds"]] == [1]


def test_uqw_density_failure_exit_2(tmp_path):
    k16 = tmp_path / "k16.el"
    run("gen", "--family", "clique", "--params", "n=16", "--out", str(k16), check=True)
    proc = run(
        "uqw", "--graph", str(k16), "--A", "all", "--r", "2", "--m", "8",
        "--s-max", "4",
    )
    assert proc.returncode == 2
    doc = json.loads(proc.stdout)
    assert doc["result"]["failure"] == "density"
    assert len(doc["result"]["certificate"]) == 16
    assert doc["result"]["rounds_completed"] == 0


def test_indiscernible_command(grid32):
    proc = run(
        "indiscernible", "--graph", grid32, "--seq", "all", "--delta", "2",
        "--m", "4", check=True,
    )
    doc = json.loads(proc.stdout)
    assert doc["command"] == "indiscernible"
    out = doc["result"]["sequence"]
    assert len(out) <= 4
    assert doc["verified"]["indiscernible"] is True


def test_ladder_command(tmp_path):
    hg = tmp_path / "hg3.el"
    run("gen", "--family", "halfgraph", "--params", "k=3", "--out", str(hg), check=True)
    proc = run("ladder", "--graph", str(hg), "--max-k", "5", check=True)
    doc = json.loads(proc.stdout)
    assert doc["result"] == {"ladder_index": 3, "max_k": 5}


def test_core_command(grid32):
    proc = run("core", "--graph", grid32, "--r", "1", "--k", "1", "--ell", "4", check=True)
    doc = json.loads(proc.stdout)
    assert sorted(doc["result"]["Z"]) == [0, 1, 2, 3, 4, 5]
    assert doc["result"]["removed"] == []
    single = run(
        "core", "--graph", grid32, "--r", "1", "--k", "1", "--ell", "4",
        "--single", check=True,
    )
    assert json.loads(single.stdout)["result"]["Z"] == doc["result"]["Z"]


def test_kernelize_writes_parseable_kernel(tmp_path, grid32):
    out = tmp_path / "kern.txt"
    proc = run(
        "kernelize", "--graph", grid32, "--r", "1", "--k", "1", "--ell", "4",
        "--out", str(out), "--verify", check=True,
    )
    doc = json.loads(proc.stdout)
    assert doc["verified"] == {
        "equivalence": True,
        "projection": True,
        "removals_justified": True,
    }
    assert doc["result"]["k_new"] == 2
    assert doc["result"]["answer_input"] == doc["result"]["answer_kernel"]

    from quasiwide.io import parse_edge_list, parse_kernel_header

    text = out.read_text()
    head = parse_kernel_header(text)
    assert head["k_new"] == 2
    assert head["z"] == [0, 1, 2, 3, 4, 5]
    n, _ = parse_edge_list(text)
    assert n == doc["result"]["vh"]


def test_solve_drds_no_instance_exit_3(grid32):
    proc = run("solve", "--graph", grid32, "--problem", "drds", "--r", "1", "--k", "1")
    assert proc.returncode == 3
    doc = json.loads(proc.stdout)
    assert doc["result"] == {"solution": "NONE"}


def test_solve_drds_yes(grid32):
    proc = run(
        "solve", "--graph", grid32, "--problem", "drds", "--r", "2", "--k", "1",
        check=True,
    )
    doc = json.loads(proc.stdout)
    assert len(doc["result"]["solution"]) == 1


def test_solve_steiner(grid32):
    proc = run(
        "solve", "--graph", grid32, "--problem", "steiner", "--terminals", "0,5",
        check=True,
    )
    doc = json.loads(proc.stdout)
    assert doc["result"]["cost"] == 3
    assert doc["verified"]["tree"] is True
    assert len(doc["result"]["edges"]) == 3


def test_solve_cds_both_engines(grid32):
    for problem in ("cds", "cds-fpt"):
        proc = run(
            "solve", "--graph", grid32, "--problem", problem, "--k", "2",
            check=True,
        )
        doc = json.loads(proc.stdout)
        assert len(doc["result"]["solution"]) <= 2


def test_bad_edge_file_reports_line(tmp_path):
    bad = tmp_path / "bad.el"
    bad.write_text("n=3\n0 1\n9 1\n")
    proc = run("solve", "--graph", str(bad), "--problem", "drds", "--r", "1", "--k", "1")
    assert proc.returncode == 1
    assert "line 3" in proc.stderr


def test_missing_required_flag_is_usage_error():
    proc = run("uqw", "--A", "all", "--r", "2", "--m", "3")
    assert proc.returncode == 1


def test_bench_csv_shape(tmp_path):
    out = tmp_path / "bench.csv"
    run(
        "bench", "--family", "grid", "--sizes", "4,5", "--r", "1", "--ks", "2,3",
        "--ell", "8", "--out", str(out), "--deterministic", check=True,
    )
    lines = out.read_text().splitlines()
    assert lines[0] == (
        "family,n,r,k,z,y,vh,t_core_ms,t_reduce_ms,t_build_ms,verified,projection_ok"
    )
    assert len(lines) == 5
    assert lines[1] == "grid,16,1,2,16,16,18,0.0,0.0,0.0,true,true"
    for row in lines[1:]:
        fields = row.split(",")
        assert fields[0] == "grid"
        assert fields[-2:] == ["true", "true"]


def test_deterministic_rerun_is_byte_identical(tmp_path, grid32):
    argv = [
        "kernelize", "--graph", grid32, "--r", "1", "--k", "2", "--ell", "5",
        "--out", str(tmp_path / "k.txt"), "--verify", "--deterministic",
    ]
    first = run(*argv, check=True)
    kern1 = (tmp_path / "k.txt").read_bytes()
    second = run(*argv, check=True)
    kern2 = (tmp_path / "k.txt").read_bytes()
    assert first.stdout == second.stdout
    assert kern1 == kern2
