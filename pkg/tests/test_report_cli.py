import json
import subprocess
import sys

import pytest

from nkcp3.report import SuiteConfig, list_checks, run_suite

FAST = SuiteConfig(samples=6)


def test_unknown_suite_rejected():
    with pytest.raises(KeyError):
        run_suite("nope", FAST)


def test_structure_suite_passes():
    rep = run_suite("structure", FAST)
    assert rep.passed
    assert all(item.residual < item.tolerance for item in rep.items)


def test_items_carry_claim_labels():
    rep = run_suite("structure", FAST)
    assert all(item.ref for item in rep.items)
    assert any(item.ref == "plumbing" for item in rep.items)


def test_curvature_suite_contains_scalar_item():
    rep = run_suite("curvature", FAST)
    items = {i.check_id: i for i in rep.items}
    assert items["scalar-curvature[a=2.0]"].passed
    assert items["scalar-curvature[a=2.0]"].residual == 0.0


def test_rp3_suite_contains_geodesic_item():
    rep = run_suite("lagrangian:rp3", FAST)
    items = {i.check_id: i for i in rep.items}
    assert items["rp3-totally-geodesic"].passed
    assert items["rp3-minimal"].passed


def test_tol_scale_applies():
    strict = run_suite("curvature", SuiteConfig(samples=6, tol_scale=1e-20))
    assert not strict.passed


def test_run_suite_deterministic_bytes():
    r1 = run_suite("structure", SuiteConfig(samples=6, seed=5)).to_json()
    r2 = run_suite("structure", SuiteConfig(samples=6, seed=5)).to_json()
    assert r1.encode() == r2.encode()


def test_config_echoed():
    rep = run_suite("isometry", SuiteConfig(samples=6, seed=9))
    assert rep.config["seed"] == 9
    assert rep.config["samples"] == 6
    assert "mean_curvature" in rep.conventions


def test_list_checks_names():
    names = list_checks()
    assert "structure" in names and "all" in names and "lagrangian:ehl" in names


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "nkcp3", *args], capture_output=True, text=True, timeout=560
    )


class TestCli:
    def test_usage_error_on_bad_suite(self):
        proc = run_cli("--suite", "bogus")
        assert proc.returncode == 2

    def test_usage_error_on_bad_samples(self):
        proc = run_cli("--samples", "-3")
        assert proc.returncode == 2

    def test_list_checks(self):
        proc = run_cli("--list-checks")
        assert proc.returncode == 0
        assert "lagrangian:berger" in proc.stdout

    def test_suite_json_and_exit_code(self, tmp_path):
        out = tmp_path / "report.json"
        proc = run_cli("--suite", "isometry", "--samples", "6", "--out", str(out))
        assert proc.returncode == 0
        doc = json.loads(out.read_text())
        assert doc["suite"] == "isometry"
        assert doc["passed"] is True

    def test_failing_tolerance_sets_exit_one(self):
        proc = run_cli("--suite", "curvature", "--samples", "6", "--tol-scale", "1e-20")
        assert proc.returncode == 1

    def test_stdout_deterministic(self):
        args = ("--suite", "structure", "--samples", "6", "--seed", "1")
        p1, p2 = run_cli(*args), run_cli(*args)
        assert p1.stdout.encode() == p2.stdout.encode()
