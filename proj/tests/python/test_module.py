import os

import pytest

import hfkb

DATA = os.environ["HFKB_DATA_DIR"]
FIXTURES = os.environ["HFKB_FIXTURE_DIR"]


def test_two_bridge_reports():
    for (p, q), localized in {(1, 1): 2, (3, 1): 6, (5, 3): 10}.items():
        rep = hfkb.compute(two_bridge=(p, q))
        assert rep["all_verdicts_hold"]
        assert rep["cover"]["localized_total"] == localized == rep["base"]["tilde_total"]


def test_grid_report():
    rep = hfkb.compute(grid=os.path.join(DATA, "trefoil5.grid"))
    assert rep["base"]["tilde_total"] == 48
    assert rep["base"]["determinant"] == 3
    with pytest.raises(hfkb.ValidationError, match="genus-0"):
        hfkb.compute(grid=os.path.join(DATA, "trefoil5.grid"), lift=True)


def test_argument_checks():
    with pytest.raises(TypeError):
        hfkb.compute()
    with pytest.raises(ValueError):
        hfkb.compute(two_bridge=(6, 1))


def test_diagram_round_trip(tmp_path):
    text = hfkb.two_bridge_diagram(5, 3)
    assert hfkb.validate_diagram(text)["ok"]
    path = tmp_path / "fig8.txt"
    path.write_text(text)
    rep = hfkb.compute(diagram=path)
    assert rep["cover"]["spinc_classes"] == 5
    cover = hfkb.lifted_diagram(3, 1)
    assert "[tau]" in cover
    v = hfkb.validate_diagram(cover)
    assert v["ok"] and v["genus"] == 1


def test_identities():
    assert hfkb.sigma_doubling(2) == ["0", "-r1 - r2", "0", "r1*r2"]
    assert hfkb.sym_wedge_betti(5, 2) == [1, 5, 10]
    assert hfkb.check_i1_surjectivity(4)
    assert hfkb.checks(max_n=3)["passed"]
    assert not hfkb.checks(max_n=2, fixture=os.path.join(FIXTURES, "checks_corrupted.json"))["passed"]
