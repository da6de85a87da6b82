import math

import pytest

import horoeq


def test_version():
    assert horoeq.__version__.startswith("horoeq ")


def test_geometry():
    assert horoeq.hyperbolic_distance(1j, 4j) == pytest.approx(math.log(4.0))
    w = horoeq.apply((0.0, -1.0, 1.0, 0.0), 2j)
    assert w == pytest.approx(0.5j)


def test_reduce_and_height():
    z, g = horoeq.reduce(0.3 + 0.01j)
    assert abs(z.real) <= 0.5 and abs(z) >= 1.0 - 1e-12
    assert horoeq.contains(g)
    assert horoeq.apply(g, 0.3 + 0.01j) == pytest.approx(z)
    assert horoeq.invariant_height(1j) == 1.0
    y = horoeq.invariant_height(0.25 + 0.5j, "gamma1_4")
    assert horoeq.invariant_height(1.25 + 0.5j, "gamma1_4") == pytest.approx(y, rel=1e-12)


def test_continued_fraction():
    quotients, conv = horoeq.continued_fraction("7/5", 10)
    assert quotients == [1, 2, 2]
    assert conv[-1] == (7, 5)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        horoeq.reduce(1j, "nope")
    with pytest.raises(horoeq.NumericGuard):
        horoeq.escape_window(2, 8.0)


def test_equidistribution_and_pair_correlation():
    cell = (-0.5, 0.5, 2.0, math.inf)
    mean = horoeq.cell_mean(cell)
    assert mean == pytest.approx(3.0 / (2.0 * math.pi), rel=1e-12)
    avg = horoeq.pse_average("sqrt2", 10000, 1.0, cell)
    assert abs(avg.real - mean) < 0.05
    assert horoeq.r2_via_theta("sqrt2", 50) == pytest.approx(horoeq.r2_smoothed("sqrt2", 50), rel=1e-8)
    assert abs(horoeq.r2_sharp("sqrt2", 2000, 0.0, 1.0) - 1.0) < 0.15


def test_run_config_threads_agree():
    text = "[experiment]\ntype = diophantine\nalpha = sqrt2\ndepth = 10\nN1 = 1\nschedule = 100, 1000\nM = 1e9\nfit_M = 100\n"
    a = horoeq.run_config(text, 1)
    b = horoeq.run_config(text, 4)
    assert a[0] == 0, a[2]
    assert a == b
