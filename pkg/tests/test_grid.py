"""Grid construction rules, spectral derivatives, and field algebra."""

import numpy as np
import pytest

from qfluid.grid import (ComplexField, Field, Grid, convolve, dealias,
                         derivative, integrate)


@pytest.mark.parametrize("n,msg", [(9, "even"), (7, "n >= 8"), (4, "n >= 8")])
def test_grid_rejects_bad_n(n, msg):
    with pytest.raises(ValueError, match=msg):
        Grid(n=n, length=1.0)


@pytest.mark.parametrize("length", [0.0, -2.0, float("inf"), float("nan")])
def test_grid_rejects_bad_length(length):
    with pytest.raises(ValueError, match="length"):
        Grid(n=16, length=length)


def test_grid_samples_and_wavenumbers():
    g = Grid(n=16, length=2.0)
    assert g.dx == 0.125
    assert g.x[0] == 0.0
    assert g.x[-1] == pytest.approx(2.0 - 0.125)
    assert g.k[0] == 0.0
    assert g.k[1] == pytest.approx(np.pi)  # 2 pi / L
    assert g.signed_x.min() == pytest.approx(-1.0)
    assert g.signed_x.max() < 1.0


def test_dealias_mask_keeps_two_thirds():
    g = Grid(n=96, length=1.0)
    kept = int(g.dealias_mask.sum())
    kmax = np.abs(g.k).max()
    expected = int((np.abs(g.k) <= 2.0 / 3.0 * kmax * (1 + 1e-12)).sum())
    assert kept == expected
    assert kept < g.n


def test_derivative_matches_analytic_trig():
    g = Grid(n=64, length=2.0)
    m = 3
    w = 2.0 * np.pi * m / g.length
    f = Field(g, np.sin(w * g.x + 0.3))
    d1 = derivative(f, 1).values
    d2 = derivative(f, 2).values
    assert np.abs(d1 - w * np.cos(w * g.x + 0.3)).max() < 1e-12 * w
    assert np.abs(d2 + w * w * np.sin(w * g.x + 0.3)).max() < 1e-11 * w * w


def test_derivative_zeroes_nyquist_for_odd_orders():
    g = Grid(n=16, length=1.0)
    nyq = Field(g, np.cos(np.pi * np.arange(g.n)))  # pure Nyquist mode
    assert np.abs(derivative(nyq, 1).values).max() < 1e-12
    # even orders keep it: second derivative is -k_nyq^2 * field
    d2 = derivative(nyq, 2).values
    assert np.abs(d2 + (np.pi * g.n) ** 2 * nyq.values).max() < 1e-7


def test_derivative_rejects_order_zero():
    g = Grid(n=16, length=1.0)
    with pytest.raises(ValueError, match="order"):
        derivative(Field(g, np.ones(16)), 0)


def test_integrate_constant_plus_cosine():
    g = Grid(n=32, length=3.0)
    f = Field(g, 2.5 + 0.7 * np.cos(2 * np.pi * g.x / g.length))
    assert integrate(f) == pytest.approx(2.5 * 3.0, abs=1e-13)


def test_convolve_matches_direct_sum():
    g = Grid(n=32, length=1.0)
    rng = np.random.default_rng(7)
    f = rng.normal(size=g.n)
    h = rng.normal(size=g.n)
    got = convolve(Field(g, f), Field(g, h)).values
    want = np.zeros(g.n)
    for i in range(g.n):
        for j in range(g.n):
            want[i] += f[j] * h[(i - j) % g.n]
    want *= g.dx
    assert np.abs(got - want).max() < 1e-12 * np.abs(want).max()


def test_convolve_rejects_grid_mismatch():
    a = Field(Grid(n=16, length=1.0), np.ones(16))
    b = Field(Grid(n=32, length=1.0), np.ones(32))
    with pytest.raises(ValueError, match="different grids"):
        convolve(a, b)


def test_dealias_removes_high_mode_keeps_low():
    g = Grid(n=48, length=1.0)
    low = np.cos(2 * np.pi * 4 * g.x)
    high = np.cos(2 * np.pi * 20 * g.x)  # above 2/3 * 24
    out = dealias(Field(g, low + high)).values
    assert np.abs(out - low).max() < 1e-12


def test_field_validation_and_immutability():
    g = Grid(n=16, length=1.0)
    with pytest.raises(ValueError, match="shape"):
        Field(g, np.ones(17))
    with pytest.raises(ValueError, match="finite"):
        Field(g, np.full(16, np.nan))
    f = Field(g, np.ones(16))
    with pytest.raises(ValueError):
        f.values[0] = 2.0


def test_field_arithmetic():
    g = Grid(n=16, length=1.0)
    a = Field(g, np.full(16, 3.0))
    b = Field(g, np.full(16, 2.0))
    assert np.all((a + b).values == 5.0)
    assert np.all((a - b).values == 1.0)
    assert np.all((a * b).values == 6.0)
    assert np.all((a / b).values == 1.5)
    assert np.all((2.0 * a).values == 6.0)
    assert np.all((1.0 - b).values == -1.0)
    assert np.all((-a).values == -3.0)
    other = Field(Grid(n=32, length=1.0), np.ones(32))
    with pytest.raises(ValueError):
        a + other


def test_complex_field_validation():
    g = Grid(n=16, length=1.0)
    c = ComplexField(g, np.exp(1j * g.x))
    assert c.values.dtype == complex
    with pytest.raises(ValueError, match="finite"):
        ComplexField(g, np.full(16, np.nan + 0j))
