import numpy as np
import pytest

from asbq.grid import (SpectralField, h1_seminorm, helmholtz_inverse,
                       hermitian_full, l2_norm_parseval, lp_norm, make_grid,
                       norm_functionals, spectral_derivative)

from conftest import band_limited


def test_make_grid_1d_nodes_and_wavenumbers():
    g = make_grid(1, 4, 1.0)
    assert np.allclose(g.x, [-np.pi / 2, 0.0, np.pi / 2, np.pi])
    assert np.array_equal(g.kx, [0.0, 1.0, -2.0, -1.0])
    assert g.h_x == pytest.approx(np.pi / 2)
    assert np.allclose(np.diff(g.x), g.h_x)


def test_make_grid_2d_paper_scale():
    g = make_grid(2, 2 ** 12, 10.0, 2 ** 7, 3.0)
    assert g.x[0] == pytest.approx(-np.pi * 10 + g.h_x)
    assert g.x[-1] == pytest.approx(np.pi * 10)
    assert g.y[-1] == pytest.approx(np.pi * 3)
    assert g.kx[1] == pytest.approx(1 / 10)
    assert g.ky[1] == pytest.approx(1 / 3)
    assert g.kx[g.n_x // 2] == pytest.approx(-g.n_x / 2 / 10)


@pytest.mark.parametrize("bad", [6, 12, 100, 3])
def test_make_grid_rejects_non_power_of_two(bad):
    with pytest.raises(ValueError, match="power of two"):
        make_grid(1, bad, 1.0)


def test_make_grid_rejects_nonpositive_scale():
    with pytest.raises(ValueError, match="l_x"):
        make_grid(1, 64, 0.0)
    with pytest.raises(ValueError, match="l_x"):
        make_grid(1, 64, -2.0)


def test_make_grid_dim_mismatches():
    with pytest.raises(ValueError):
        make_grid(1, 64, 1.0, n_y=64, l_y=1.0)
    with pytest.raises(ValueError):
        make_grid(2, 64, 1.0)
    with pytest.raises(ValueError):
        make_grid(3, 64, 1.0)


def test_round_trip_precision():
    g = make_grid(1, 256, 2.0)
    vals = band_limited(g, n_modes=40, seed=1)
    f = SpectralField.from_physical(g, vals)
    back = SpectralField.from_spectral(g, f.spectral).physical
    assert np.max(np.abs(back - vals)) < 10 * np.finfo(float).eps * np.max(np.abs(vals))


def test_hermitian_symmetry_of_real_field():
    g = make_grid(1, 64, 1.0)
    f = SpectralField.from_physical(g, band_limited(g, seed=2))
    c = f.spectral
    for m in range(1, 32):
        assert c[-m] == pytest.approx(np.conj(c[m]), abs=1e-15)


@pytest.mark.parametrize("shape", [(64,), (32, 16)])
def test_hermitian_full_matches_fftn(shape):
    rng = np.random.default_rng(7)
    a = rng.standard_normal(shape)
    half = np.fft.rfftn(a)
    full = hermitian_full(half, shape[-1])
    assert np.allclose(full, np.fft.fftn(a), atol=1e-10)


def test_derivative_of_sine():
    g = make_grid(1, 64, 1.0)
    f = SpectralField.from_physical(g, np.sin(g.x))
    d = spectral_derivative(f, "x", 1)
    assert np.max(np.abs(d.physical - np.cos(g.x))) < 1e-12


def test_derivative_of_constant_is_zero():
    g = make_grid(1, 64, 3.0)
    f = SpectralField.from_physical(g, np.full(64, 2.5))
    d = spectral_derivative(f, "x", 1)
    assert np.max(np.abs(d.physical)) == 0.0


def test_derivative_gaussian_against_analytic():
    # analytic oracle: d/dx exp(-x^2) = -2 x exp(-x^2) evaluated on nodes
    g = make_grid(1, 2 ** 10, 10.0)
    f = SpectralField.from_physical(g, np.exp(-g.x ** 2))
    d = spectral_derivative(f, "x", 1)
    exact = -2 * g.x * np.exp(-g.x ** 2)
    assert np.max(np.abs(d.physical - exact)) < 1e-10


def test_derivative_second_order_and_y_direction():
    g = make_grid(2, 32, 1.0, 64, 2.0)
    vals = np.cos(g.x)[:, None] * np.sin(2 * g.y / 2)[None, :]
    f = SpectralField.from_physical(g, vals)
    dyy = spectral_derivative(f, "y", 2)
    exact = -vals  # second mode on l_y=2 has k=1
    assert np.max(np.abs(dyy.physical - exact)) < 1e-12
    with pytest.raises(ValueError):
        spectral_derivative(f, "x", 3)
    g1 = make_grid(1, 32, 1.0)
    f1 = SpectralField.from_physical(g1, np.sin(g1.x))
    with pytest.raises(ValueError):
        spectral_derivative(f1, "y", 1)


def test_derivative_exact_on_modes_below_nyquist():
    # coefficientwise the multiplier is diagonal: error below 10*eps per mode
    g = make_grid(1, 64, 1.5)
    eps = np.finfo(float).eps
    rng = np.random.default_rng(11)
    for m in (1, 5, 20, 31):
        k = m / g.l_x
        coeffs = np.zeros(64, dtype=complex)
        c = rng.standard_normal() + 1j * rng.standard_normal()
        coeffs[m], coeffs[-m] = c, np.conj(c)
        f = SpectralField.from_spectral(g, coeffs)
        d = spectral_derivative(f, "x", 1)
        expected = 1j * k * coeffs[m]
        assert abs(d.spectral[m] - expected) <= 10 * eps * abs(expected)
        assert abs(d.spectral[-m] - np.conj(expected)) <= 10 * eps * abs(expected)


def test_nyquist_zeroed_on_first_derivative():
    g = make_grid(1, 16, 1.0)
    coeffs = np.zeros(16, dtype=complex)
    coeffs[8] = 1.0  # pure Nyquist content
    f = SpectralField.from_spectral(g, coeffs)
    d = spectral_derivative(f, "x", 1)
    assert np.max(np.abs(d.spectral)) == 0.0


def test_helmholtz_identity_when_eps_zero():
    g = make_grid(1, 64, 1.0)
    f = SpectralField.from_physical(g, band_limited(g, seed=3))
    out = helmholtz_inverse(f, 0.0)
    assert np.array_equal(out.physical, f.physical)


def test_helmholtz_single_modes():
    g = make_grid(1, 64, 1.0)
    f = SpectralField.from_physical(g, np.cos(g.x))
    out = helmholtz_inverse(f, 1.0)
    assert np.max(np.abs(out.physical - np.cos(g.x) / 2)) < 1e-14

    g2 = make_grid(2, 32, 1.0, 32, 1.0)
    vals = np.cos(g2.x)[:, None] * np.cos(g2.y)[None, :]
    f2 = SpectralField.from_physical(g2, vals)
    out2 = helmholtz_inverse(f2, 1.0)
    assert np.max(np.abs(out2.physical - vals / 3)) < 1e-14


def test_helmholtz_inverts_operator():
    # apply (1 - eps*Lap) spectrally, invert, compare coefficientwise
    g = make_grid(2, 64, 2.0, 32, 1.0)
    f = SpectralField.from_physical(g, band_limited(g, seed=4))
    eps = 0.37
    forward = SpectralField.from_spectral(g, f.spectral * (1 + eps * g.k_squared))
    back = helmholtz_inverse(forward, eps)
    num = np.abs(back.spectral - f.spectral)
    den = np.max(np.abs(f.spectral))
    assert np.max(num) / den < 1e-13


def test_helmholtz_rejects_negative_eps():
    g = make_grid(1, 16, 1.0)
    f = SpectralField.from_physical(g, np.sin(g.x))
    with pytest.raises(ValueError):
        helmholtz_inverse(f, -0.1)


def test_lp_norms_of_sine():
    g = make_grid(1, 256, 1.0)
    f = SpectralField.from_physical(g, np.sin(g.x))
    assert lp_norm(f, 2) == pytest.approx(np.sqrt(np.pi), rel=1e-13)
    assert lp_norm(f, 4) == pytest.approx((3 * np.pi / 4) ** 0.25, rel=1e-13)
    assert lp_norm(f, "inf") == pytest.approx(1.0, abs=1e-12)


def test_l2_norm_gaussian():
    # oracle: integral of exp(-2x^2) over R is sqrt(pi/2)
    g = make_grid(1, 2 ** 10, 10.0)
    f = SpectralField.from_physical(g, np.exp(-g.x ** 2))
    assert lp_norm(f, 2) == pytest.approx((np.pi / 2) ** 0.25, rel=1e-12)


def test_parseval_agreement(rng):
    for seed in range(3):
        g = make_grid(2, 64, 1.7, 32, 0.9)
        f = SpectralField.from_physical(g, band_limited(g, seed=seed))
        quad = lp_norm(f, 2)
        par = l2_norm_parseval(f)
        assert abs(quad - par) / quad < 1e-12


def test_h1_seminorm_matches_gradient_quadrature():
    g = make_grid(2, 64, 2.0, 64, 1.0)
    f = SpectralField.from_physical(g, band_limited(g, seed=5))
    dx = spectral_derivative(f, "x", 1).physical
    dy = spectral_derivative(f, "y", 1).physical
    quad = np.sqrt(g.cell_measure * np.sum(dx ** 2 + dy ** 2))
    assert abs(h1_seminorm(f) - quad) / quad < 1e-10


def test_norm_functionals_batch_and_rejection():
    g = make_grid(1, 64, 1.0)
    f = SpectralField.from_physical(g, np.sin(g.x))
    out = norm_functionals(f, (2, 4, "inf", "h1"))
    assert set(out) == {2, 4, "inf", "h1"}
    with pytest.raises(ValueError):
        norm_functionals(f, (3,))


def test_fft_worker_cap_env(monkeypatch):
    from asbq._fft import fft_workers
    monkeypatch.setenv("ASBQ_THREADS", "1")
    assert fft_workers() == 1
    monkeypatch.setenv("ASBQ_THREADS", "junk")
    assert fft_workers() >= 1
    monkeypatch.delenv("ASBQ_THREADS")
    assert fft_workers() >= 1


def test_operations_preserve_realness():
    g = make_grid(2, 64, 1.0, 32, 2.0)
    f = SpectralField.from_physical(g, band_limited(g, seed=6))
    d = spectral_derivative(f, "x", 1)
    h = helmholtz_inverse(d, 0.5)
    resid = np.max(np.abs(np.fft.ifftn(h.spectral * np.prod(g.shape)).imag))
    assert resid < 1e-12 * max(np.max(np.abs(h.physical)), 1e-30)
