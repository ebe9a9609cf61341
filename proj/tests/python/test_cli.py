import json
import os
import subprocess

import pytest

CLI = os.environ["HFKB_CLI"]
DATA = os.environ["HFKB_DATA_DIR"]
FIXTURES = os.environ["HFKB_FIXTURE_DIR"]


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=120)


def report(*args):
    r = run(*args, "--report", "json")
    assert r.returncode == 0, r.stderr
    return json.loads(r.stdout)


def test_trefoil_json():
    rep = report("compute", "--two-bridge", "3", "1")
    assert rep["schema"] == 1
    assert rep["all_verdicts_hold"]
    assert all(v["holds"] for v in rep["verdicts"])
    assert rep["cover"]["localized_total"] == 6
    assert "timing" not in rep


def test_json_is_byte_deterministic():
    a = run("compute", "--two-bridge", "5", "3", "--report", "json").stdout
    b = run("compute", "--two-bridge", "5", "3", "--report", "json").stdout
    assert a == b
    assert list(json.loads(a)) == sorted(json.loads(a))


def test_timing_only_on_request():
    rep = report("compute", "--two-bridge", "1", "1", "--timing")
    assert set(rep["timing"]) == {"base_ms", "cover_ms"}


def test_unknot_grid_is_base_only():
    rep = report("compute", "--grid", os.path.join(DATA, "unknot2.grid"))
    assert rep["base"]["tilde_total"] == 2
    assert "cover" not in rep


def test_grid_lift_is_refused():
    r = run("compute", "--grid", os.path.join(DATA, "trefoil5.grid"), "--lift")
    assert r.returncode == 2
    assert "cover requires genus-0 base" in r.stderr


@pytest.mark.parametrize("grid,p,q", [("trefoil5.grid", 3, 1), ("figure_eight6.grid", 5, 3)])
def test_grid_and_two_bridge_agree(grid, p, q):
    g = report("compute", "--grid", os.path.join(DATA, grid))
    b = report("compute", "--two-bridge", str(p), str(q), "--no-lift")
    assert g["base"]["hat_by_alexander"] == b["base"]["hat_by_alexander"]


def test_text_report():
    r = run("compute", "--two-bridge", "3", "1", "--report", "text")
    assert r.returncode == 0
    assert "determinant 3" in r.stdout
    assert "all verdicts hold" in r.stdout


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("alpha a : 0 1\n")
    assert run("compute", "--diagram", str(bad)).returncode == 4
    assert run("compute", "--grid", str(tmp_path / "missing.grid")).returncode == 4
    assert run("compute", "--two-bridge", "3").returncode == 4
    assert run("compute", "--report", "yaml", "--two-bridge", "3", "1").returncode == 4


def test_validation_errors(tmp_path):
    assert run("compute", "--two-bridge", "4", "1").returncode == 2
    hexagon = tmp_path / "hexagon.txt"
    hexagon.write_text(
        "[curves]\n"
        "alpha a : 0 1 2 3 4 5\n"
        "beta b : 0 1 2 3 4 5\n"
        "[regions]\n"
        "0 : a.0 + b.0 - | corners: 1 SW 0 NE\n"
        "1 : a.0 - b.5 - a.4 - b.3 - a.2 - b.1 - | corners: 0 SE 5 NW 4 SE 3 NW 2 SE 1 NW\n"
        "2 : a.1 + b.2 + a.3 + b.4 + a.5 + b.0 + | corners: 2 NW 3 SE 4 NW 5 SE 0 NW 1 SE\n"
        "3 : a.1 - b.1 + | corners: 1 NE 2 SW\n"
        "4 : a.2 + b.2 - | corners: 3 SW 2 NE\n"
        "5 : a.3 - b.3 + | corners: 3 NE 4 SW\n"
        "6 : a.4 + b.4 - | corners: 5 SW 4 NE\n"
        "7 : a.5 - b.5 + | corners: 5 NE 0 SW\n"
        "[basepoints]\n"
        "0 = w1\n4 = z2\n3 = w2\n5 = z1\n"
    )
    r = run("compute", "--diagram", str(hexagon))
    assert r.returncode == 2
    assert "not nice" in r.stderr and "1 2" in r.stderr


def test_checks():
    assert run("checks").returncode == 0
    r = run("checks", "--max-n", "2", "--report", "json")
    assert r.returncode == 0
    assert len(json.loads(r.stdout)["sigma_doubling"]) == 2
    assert run("checks", "--fixture", os.path.join(DATA, "checks_expected.json")).returncode == 0
    bad = run("checks", "--fixture", os.path.join(FIXTURES, "checks_corrupted.json"))
    assert bad.returncode != 0
    assert "MISMATCH" in bad.stdout


def test_compute_with_checks():
    rep = report("compute", "--two-bridge", "1", "1", "--checks")
    assert rep["checks"]["passed"]
