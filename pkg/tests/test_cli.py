"""Command line contract: exit codes, artifacts, determinism."""

import json

import pytest
from click.testing import CliRunner

from affinetree.cli import main

POS = """
[realization]
kind = padic
prime = 2

[law]
atom1 = affine(t = 0, a = 2) weight 3/4
atom2 = affine(t = 1, a = 1/2) weight 1/4

[experiment]
seed = 9
trajectories = 100
horizon = 400
out = {out}
"""

HOR = """
[realization]
kind = padic
prime = 2

[law]
atom1 = affine(t = 1, a = 1) weight 1
"""


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, text, name="cfg.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_validate_ok(runner, tmp_path):
    cfg = write(tmp_path, POS.format(out=tmp_path / "r"))
    res = runner.invoke(main, ["validate", "--config", cfg])
    assert res.exit_code == 0
    assert "drift: 1/2" in res.output


def test_validate_horocyclic_fails(runner, tmp_path):
    cfg = write(tmp_path, HOR)
    res = runner.invoke(main, ["validate", "--config", cfg])
    assert res.exit_code == 1
    assert "Hor(T)" in res.output


def test_missing_file_exit_2(runner, tmp_path):
    res = runner.invoke(main, ["validate", "--config",
                               str(tmp_path / "nope.ini")])
    assert res.exit_code == 2


def test_malformed_config_exit_2(runner, tmp_path):
    cfg = write(tmp_path, "[law]\natom1 = what\n")
    res = runner.invoke(main, ["validate", "--config", cfg])
    assert res.exit_code == 2


def test_simulate_writes_report(runner, tmp_path):
    out = tmp_path / "sim"
    cfg = write(tmp_path, POS.format(out=out))
    res = runner.invoke(main, ["simulate", "--config", cfg, "--dump"])
    assert res.exit_code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["drift"] == "1/2"
    lines = (out / "trajectories.csv").read_text().splitlines()
    assert lines[0] == "trajectory,step,height,norm,vertex"
    assert len(lines) > 100


def test_verify_wald_suite(runner, tmp_path):
    out = tmp_path / "ver"
    cfg = write(tmp_path, POS.format(out=out))
    res = runner.invoke(main, ["verify", "--config", cfg, "--suite", "wald"])
    assert res.exit_code == 0, res.output
    assert "[PASS] wald.mass" in res.output
    report = json.loads((out / "report.json").read_text())
    assert report["verdict"] == "pass"
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config_hash"] == report["config_hash"]
    assert "wald" in manifest["timings_seconds"]


def test_verify_skips_incompatible_suite(runner, tmp_path):
    neg = POS.format(out=tmp_path / "skip").replace(
        "atom1 = affine(t = 0, a = 2) weight 3/4",
        "atom1 = affine(t = 0, a = 1/2) weight 3/4").replace(
        "atom2 = affine(t = 1, a = 1/2) weight 1/4",
        "atom2 = affine(t = 1, a = 2) weight 1/4")
    cfg = write(tmp_path, neg)
    res = runner.invoke(main, ["verify", "--config", cfg, "--suite", "wald"])
    assert res.exit_code == 0, res.output
    assert "[SKIP" in res.output
    report = json.loads((tmp_path / "skip" / "report.json").read_text())
    assert report["summary"]["skipped"] == 2
    assert report["verdict"] == "pass"


def test_verify_reports_are_deterministic(runner, tmp_path):
    outs = []
    for name in ("d1", "d2"):
        out = tmp_path / name
        cfg = write(tmp_path, POS.format(out=out), name=f"{name}.ini")
        res = runner.invoke(main, ["verify", "--config", cfg,
                                   "--suite", "wald"])
        assert res.exit_code == 0
        outs.append((out / "report.json").read_text())
    assert outs[0] == outs[1]


def test_verify_seed_override_changes_hash(runner, tmp_path):
    out = tmp_path / "s"
    cfg = write(tmp_path, POS.format(out=out))
    runner.invoke(main, ["verify", "--config", cfg, "--suite", "wald"])
    h1 = json.loads((out / "report.json").read_text())["config_hash"]
    runner.invoke(main, ["verify", "--config", cfg, "--suite", "wald",
                         "--seed", "77"])
    h2 = json.loads((out / "report.json").read_text())["config_hash"]
    assert h1 != h2
