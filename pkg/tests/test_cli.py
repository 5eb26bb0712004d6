import json

import pytest
from click.testing import CliRunner

from twofill.cli import main


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, ["--out", str(tmp_path), *args])
    return go


def test_paths_V(run):
    r = run("track", "paths", "--piece", "V")
    assert r.exit_code == 0 and r.output.strip() == "17"


def test_weight_f1(run):
    r = run("carry", "weights", "--branch", "f1")
    assert r.exit_code == 0 and r.output.strip() == "3/4"


def test_json_format_either_position(run):
    a = run("--format", "json", "carry", "weights", "--branch", "f1")
    b = run("carry", "weights", "--branch", "f1", "--format", "json")
    assert json.loads(a.output) == json.loads(b.output) == {"branch": "f1*", "weight": "3/4"}


def test_unknown_subcommand(run):
    r = run("bogus")
    assert r.exit_code != 0


def test_malformed_flag(run):
    assert run("ray", "alpha", "-k", "x").exit_code != 0
    assert run("track", "paths", "--piece", "W").exit_code != 0


@pytest.mark.parametrize("args,expect", [
    (["track", "check", "--track", "T3", "--depth", "6"], "ok"),
    (["track", "build", "--track", "T*", "--depth", "3"], "T*:"),
    (["complex", "boundary", "--track", "T2", "--depth", "8"], "6"),
    (["complex", "saddles", "--max-level", "2"], "P2 -> Q2"),
    (["complex", "trace", "--branch", "e1", "--height", "1/7", "--steps", "5"], "budget"),
    (["complex", "unzip", "--degree", "2", "--depth", "6"], "isomorphic at 1/4: True"),
    (["flat", "orbit", "a1", "--steps", "2"], "a1 -> p0 -> p2"),
    (["flat", "leaf", "-i", "1"], "SingularityHit r"),
    (["flat", "iet", "-x", "173/1024"], "941/1024"),
    (["flat", "histogram", "--returns", "800"], "100 100 100 100 100 100 100 100"),
    (["carry", "zeta", "c5"], "f-4*^-1 c5*^-1"),
    (["carry", "translate", "b0", "b1"], "b0* b1* f0*"),
    (["carry", "missing", "--depth", "1"], "f-1* f0* f1*"),
    (["ray", "alpha", "-k", "2", "--rl"], "r1 l1 R1"),
    (["ray", "gamma", "-n", "2", "-j", "1"], "gamma^(2)_1"),
    (["ray", "order", "r1", "R1"], "Greater"),
    (["ray", "subst", "--iter", "1", "--rl"], "r1 l1 R1 r2 r1 L1 R1"),
    (["ray", "crosses", "g0"], "Crosses"),
])
def test_subcommands(run, args, expect):
    r = run(*args)
    assert r.exit_code == 0, r.output
    assert expect in r.output


def test_render_files(run, tmp_path):
    assert run("track", "render", "--track", "T*", "--depth", "3").exit_code == 0
    assert run("flat", "render", "--sigma").exit_code == 0
    assert (tmp_path / "Tstar.dot").read_text().startswith("digraph")
    assert (tmp_path / "sigma.svg").read_text().startswith("<svg")


def test_domain_error_exit(tmp_path):
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "twofill", "--out", str(tmp_path), "flat", "orbit", "zz"],
                       capture_output=True, text=True)
    assert r.returncode == 2 and "unknown marked point" in r.stderr


def test_ray_verify(run, tmp_path):
    r = run("ray", "verify")
    assert r.exit_code == 0
    assert json.loads((tmp_path / "ray-report.json").read_text())["suite"] == "ray"


def test_verify_all_deterministic(run, tmp_path):
    r = run("verify", "all", "--depth", "16")
    assert r.exit_code == 0, r.output
    first = (tmp_path / "report.json").read_bytes()
    rep = json.loads(first)
    assert len(rep["checks"]) == 14
    assert {c["status"] for c in rep["checks"]} == {"Verified"}
    assert set(rep["checks"][0]) == {"checkId", "anchor", "status", "details"}
    run("verify", "all", "--depth", "16")
    assert (tmp_path / "report.json").read_bytes() == first


def test_refuted_exits_nonzero(run, monkeypatch):
    from twofill import verify
    monkeypatch.setitem(verify.CHECKS, "iet", ("forced", lambda d: (verify.REFUTED, {"input": "1/3"}), "track"))
    r = run("verify", "all", "--only", "iet")
    assert r.exit_code == 1 and "Refuted" in r.output
