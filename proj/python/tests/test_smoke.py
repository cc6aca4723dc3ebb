import math

import numpy as np
import pytest

import graded


def test_group_law():
    assert graded.multiply("H1", [1, 2, 3], [4, 5, 6]) == pytest.approx([5, 7, 7.5])
    x = [0.3, -1.2, 2.0]
    assert graded.multiply("H1", x, graded.inverse("H1", x)) == pytest.approx([0, 0, 0], abs=1e-14)
    assert graded.quasi_norm("H1", [1, 2, 3]) == pytest.approx(2)


def test_heat_kernels():
    assert graded.heat_kernel("R1", 1.0, [0.0]) == pytest.approx(1 / math.sqrt(4 * math.pi))
    assert graded.heat_kernel("H1", 1.0, [0, 0, 0]) == pytest.approx(1 / 16)


def test_special_functions():
    assert graded.kummer_reg(0.5, 1.5, -10) == pytest.approx(0.316225317080576393, rel=1e-11)
    assert graded.phi_alpha(1, 0.5, 0.0) == pytest.approx(1 / (2 * math.pi), rel=1e-10)
    with pytest.raises(ValueError):
        graded.psi(1.5, 1.0, 2.0, 1.0, 0.5)


def test_fractional_power_routes():
    x = np.linspace(-20, 20, 4096)
    f = np.exp(-x**2 / 2)
    spectral = graded.frac_power(f, -20, 20, 0.25, "spectral")
    point = graded.frac_power(f, -20, 20, 0.25, "pointwise")
    assert np.linalg.norm(spectral - point) / np.linalg.norm(spectral) < 1e-5
    with pytest.raises(ValueError):
        graded.frac_power(f, -20, 20, 0.25, "other")


def test_g_alpha_norm():
    x = np.linspace(-20, 20, 2048)
    f = np.exp(-x**2 / 2)
    ratio = graded.g_alpha_norm(f, -20, 20, 0.5) / np.sqrt(np.sum(f**2) * (x[1] - x[0]))
    assert ratio == pytest.approx(math.sqrt(0.5), rel=5e-3)


def test_suite_access():
    names = dict(graded.checks())
    assert names["G_s_identity"] == 10
    reports = graded.run_check("strichartz_counterexamples")
    assert all(r["pass"] for r in reports)
    eps = [10 ** (-2 - 0.5 * i) for i in range(7)]
    assert graded.counterexample_slope("first", 1.5, eps) == pytest.approx(-0.5, abs=0.05)
