import math

import pytest

import speclab


def test_spectrum_counts():
    assert len(speclab.spectrum("torus2-flat", cutoff=5.0)) == 81
    assert len(speclab.spectrum("circle", cutoff=20)) == 41
    assert len(speclab.spectrum("sphere", cutoff=4)) == 25


def test_arc_length_flat():
    assert speclab.arc_length("4") == pytest.approx(4 * math.pi, rel=1e-14)


def test_fd_constant_shift():
    a = speclab.fd_energies("2+sin", "0", 256, 5)
    b = speclab.fd_energies("2+sin", "1.5", 256, 5)
    assert all(abs(y - x - 1.5) < 1e-10 for x, y in zip(a, b))


def test_suite_small():
    r = speclab.uncertainty_suite(valid=5)
    assert r["valid"] == 20
    assert r["violations"] == 0


def test_sweeps():
    fr = speclab.fr_sweep(3, 4)
    assert len(fr["rows"]) == 2 and fr["min_ratio"] > 0.05
    sharp = speclab.sharpness_sweep([4, 16])
    assert all(row["mass"] >= 0.5 for row in sharp)
    w = speclab.weyl_scan("torus2-flat")
    assert w["fitted_exponent"] <= 1.15


def test_restriction():
    assert speclab.delta_exponent(1, 2.0, 2) == (0.25, 1, False)
    t = speclab.tube_measure(math.pi, math.pi, 0.25, 0.05)
    assert t == pytest.approx(4 * math.pi * 0.25 * 0.05, rel=1e-3)
    s = speclab.tubular_sweep([16], 20, 30)
    assert s["min_ratio"] > 0


def test_errors_and_cli():
    with pytest.raises(ValueError):
        speclab.spectrum("klein-bottle")
    code, out, _ = speclab.run("spectrum", "--manifold", "circle", "--nmax", 2)
    assert code == 0 and out.count("\n") == 6
    assert speclab.run("spectrum", "--metric", "2+")[0] == 2
