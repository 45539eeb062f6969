import csv
import io
import math
import os
import subprocess

import pytest

CLI = os.environ["ACTHOM_CLI"]


def run(*args, cwd=None):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd)


@pytest.fixture(scope="module")
def small(tmp_path_factory):
    d = tmp_path_factory.mktemp("small")
    assert run("generate", "two-circles", "--n", 300, "--seed", 7, "--out", d / "pts.csv").returncode == 0
    return d


def test_bounds_vary_tau_has_seven_rows():
    r = run("bounds", "--mode", "vary-tau", "--delta", 0.1, "--w", 1e-10, "--grid", "0.1:0.7:7")
    assert r.returncode == 0, r.stderr
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert len(rows) == 7
    assert all(row["feasible"] == "1" for row in rows)
    assert all(0 < float(row["ratio"]) < 1 for row in rows)


def test_bounds_infeasible_grid_exits_3():
    r = run("bounds", "--mode", "vary-w", "--delta", 0.1, "--tau", 0.1, "--grid", "1e-10:0.0175:7")
    assert r.returncode == 3
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert [row["feasible"] for row in rows] == ["1"] * 6 + ["0"]
    assert "infeasible" in r.stderr


def test_query_budget_zero_writes_empty_log(small):
    out = small / "empty.csv"
    r = run("query", "--points", small / "pts.csv", "--strategy", "s2", "--budget", 0,
            "--seed", 1, "--out", out)
    assert r.returncode == 0, r.stderr
    assert out.read_text() == "step,vertex,label,phase\n"


def test_unknown_flag_exits_2():
    r = run("bounds", "--mode", "vary-tau", "--w", 0, "--grid", "0.1:0.2:2", "--bogus", 1)
    assert r.returncode == 2
    assert "bogus" in r.stderr


def test_invalid_argument_exits_2(small):
    r = run("query", "--points", small / "pts.csv", "--budget", 5, "--budget-fraction", 0.1,
            "--seed", 1, "--out", small / "x.csv")
    assert r.returncode == 2
    r = run("query", "--points", small / "missing.csv", "--budget", 5, "--seed", 1,
            "--out", small / "x.csv")
    assert r.returncode == 2


def test_query_requires_seed(small):
    r = run("query", "--points", small / "pts.csv", "--budget", 5, "--out", small / "x.csv")
    assert r.returncode == 2


def test_reruns_are_byte_identical(small, tmp_path):
    pts = small / "pts.csv"
    before = pts.read_bytes()
    outputs = []
    for name in ("a", "b"):
        d = tmp_path / name
        d.mkdir()
        assert run("generate", "two-circles", "--n", 300, "--seed", 7, "--out", d / "pts.csv").returncode == 0
        assert run("graph", "--points", pts, "--radius", 0.65, "--out", d / "edges.csv").returncode == 0
        assert run("query", "--points", pts, "--strategy", "s2", "--budget-fraction", 0.3,
                   "--seed", 3, "--out", d / "log.csv").returncode == 0
        assert run("persistence", "--points", pts, "--log", d / "log.csv", "--k-opposite", 5,
                   "--kappa-max", 1.39, "--out", d / "pd.json").returncode == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outputs[0] == outputs[1]
    assert outputs[0]["pts.csv"] == before
    assert pts.read_bytes() == before


def test_sweep_config(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("fraction=0.2\nradius=-1\n")
    r = run("sweep", "--config", bad)
    assert r.returncode == 2
    assert "radius" in r.stderr
    empty = tmp_path / "empty.cfg"
    empty.write_text("n=200\nseed=1\nstrategy=s2\n")
    r = run("sweep", "--config", empty)
    assert r.returncode == 0, r.stderr
    assert len(r.stdout.strip().splitlines()) == 1
    one = tmp_path / "one.cfg"
    one.write_text("n=200\nseed=1\nstrategy=passive\nfraction=0.2\n")
    r = run("sweep", "--config", one)
    assert r.returncode == 0, r.stderr
    assert len(list(csv.DictReader(io.StringIO(r.stdout)))) == 1


def test_full_pipeline_recovers_pd1_at_half_budget(tmp_path):
    pts, edges, log = tmp_path / "pts.csv", tmp_path / "edges.csv", tmp_path / "log.csv"
    truth, est = tmp_path / "truth.json", tmp_path / "est.json"
    assert run("generate", "two-circles", "--n", 2000, "--seed", 7, "--out", pts).returncode == 0
    assert run("graph", "--points", pts, "--radius", 0.65, "--out", edges).returncode == 0
    assert run("query", "--points", pts, "--graph", edges, "--strategy", "s2",
               "--budget-fraction", 0.5, "--seed", 1, "--out", log).returncode == 0
    common = ["--k-opposite", 5, "--kappa-max", 1.39]
    assert run("persistence", "--points", pts, *common, "--out", truth).returncode == 0
    assert run("persistence", "--points", pts, "--log", log, *common, "--out", est).returncode == 0
    r = run("bottleneck", "--a", truth, "--b", est, "--dim", 1)
    assert r.returncode == 0, r.stderr
    assert float(r.stdout) <= 1e-9
    assert not math.isinf(float(r.stdout))
