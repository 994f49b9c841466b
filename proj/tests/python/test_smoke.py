import math

import pytest

import asep_kpz


def test_scaling_constants():
    a1, a2 = asep_kpz.scaling_constants(0.0)
    assert a1 == 0.25
    assert a2 == pytest.approx(0.396850262992049869, abs=1e-15)
    assert asep_kpz.m_of(0.0, 1.0, 1000.0) == 246
    assert asep_kpz.invert_sigma(0.0, 1.0, 1000.0) == pytest.approx(0.246015664013657926, abs=1e-13)
    with pytest.raises(ValueError):
        asep_kpz.invert_sigma(0.0, 50.0, 10.0)


def test_airy_and_f2():
    ai, aip = asep_kpz.airy(0.0)
    assert ai == pytest.approx(0.355028053887817239, abs=1e-15)
    assert aip == pytest.approx(-0.258819403792806798, abs=1e-15)
    assert asep_kpz.f2_cdf(0.0) == pytest.approx(0.969372828355262668, abs=1e-13)
    assert asep_kpz.f2_cdf_painleve(-2.0) == pytest.approx(asep_kpz.f2_cdf(-2.0), abs=1e-10)
    assert asep_kpz.limit_law_current(1.0) == pytest.approx(1.0 - asep_kpz.f2_cdf(-1.0), abs=1e-15)


def test_ensemble_is_reproducible():
    a = asep_kpz.run_ensemble(t=10.0, trajectories=50, seed=3, s_grid=[0.0], workers=1)
    b = asep_kpz.run_ensemble(t=10.0, trajectories=50, seed=3, s_grid=[0.0], workers=2)
    assert a["currents"] == b["currents"]
    assert len(a["normalized"]) == 50
    assert 0.0 < a["ks_distance"] < 1.0
    assert a["ks_distance"] == pytest.approx(asep_kpz.ks_distance_to_limit_law(a["normalized"]))


def test_positions_are_ordered():
    finals = asep_kpz.simulate_positions(0.25, 0.75, 20, 5.0, 10)
    assert len(finals) == 10
    for positions in finals:
        assert all(x < y for x, y in zip(positions, positions[1:]))


def test_exact_oracle():
    law = asep_kpz.exact_law(0.25, 0.75, 3, -3, 5, 0.5)
    assert len(law["states"]) == 84
    assert math.fsum(law["probabilities"]) == pytest.approx(1.0, abs=1e-11)
    current = asep_kpz.exact_current_law(0.25, 0.75, 3, -3, 5, 0, 0.5)
    assert len(current["pmf"]) == 4


def test_cli(tmp_path):
    code = asep_kpz.cli(["f2", "--s", "-1:1:1", "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "f2.csv").read_text().splitlines()
    assert lines[0] == "s,F2,limit_law"
    assert len(lines) == 4
    assert asep_kpz.cli(["simulate", "--p", "0.9", "--q", "0.1"]) == 1
