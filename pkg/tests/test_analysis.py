from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nvranging.analysis import (
    ScanCurve,
    calibrate_contrast,
    dark_fringe_distance,
    distance_grid,
    electric_sensitivity,
    field_sensitivity,
    full_collection_sensitivity,
    fwhm_of_feature,
    max_response,
    noise_free_curve,
    operating_field,
    optimal_rf_duration,
    phase_sensitivity,
    ranging_accuracy,
    response_curve,
    response_ratio,
    scan_curve,
    sensitivity_formula,
)
from nvranging.errors import DomainError, UnboundedFeatureError, UnreachableResponseError
from nvranging.interferometer import RangingGeometry
from nvranging.physics import NVEnsembleParams
from nvranging.pulses import PulseSequence, mean_normalized_signal

T1 = 1 / (4 * 7.6e3 * 2.8e10 * 39e-9)


# ---------------------------------------------------------------------------
# Oracles, written against the closed-form mean signal
#   S(L) = 1 - C/2 (1 - E cos(N pi u)),  u = |cos(2 pi L / lambda)|,  E = exp(-N t1 / tau)
# ---------------------------------------------------------------------------

def fwhm_oracle(n, lam):
    # half level between the peak (u=0) and the neighbouring minima (u=1/N)
    # sits at cos(N pi u) = 0 for any envelope E
    return lam / np.pi * np.arcsin(1 / (2 * n))


def max_slope_oracle(n, C, tau, lam):
    u = np.linspace(0, 1, 2_000_001)
    g = np.abs(np.sin(n * np.pi * u)) * np.sqrt(1 - u * u)
    return 0.5 * C * np.exp(-n * T1 / tau) * n * np.pi * (2 * np.pi / lam) * g.max()


# ---------------------------------------------------------------------------

def test_scan_curve_validation():
    with pytest.raises(DomainError):
        ScanCurve(np.array([0.0, 1.0]), np.array([0.0, 1.0]))
    with pytest.raises(DomainError):
        ScanCurve(np.array([0.0, 2.0, 1.0]), np.zeros(3))


def test_triangle_fwhm():
    x = np.linspace(-5, 5, 1001)
    w = 2.0  # full base width of the triangle
    y = np.clip(1 - np.abs(x) / (w / 2), 0, None)
    assert fwhm_of_feature(ScanCurve(x, y), 0.3) == pytest.approx(w / 2, abs=1e-12)
    # inverted triangle on a unit baseline
    assert fwhm_of_feature(ScanCurve(x, 1 - y), -0.2) == pytest.approx(w / 2, abs=1e-12)


def test_truncated_feature_raises():
    x = np.linspace(-1, 1, 201)
    y = np.exp(-x * x / 0.5)
    with pytest.raises(UnboundedFeatureError):
        fwhm_of_feature(ScanCurve(x, y), 0.0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_fwhm_matches_closed_form(params, geometry, n):
    lam = geometry.wavelength
    c = dark_fringe_distance(geometry)
    curve = noise_free_curve(params, geometry, PulseSequence(n_pi=n), distance_grid(c, lam, lam / 2000))
    assert fwhm_of_feature(curve, c) == pytest.approx(fwhm_oracle(n, lam), rel=2e-4)


def test_fwhm_ratio_four(params, geometry):
    lam = geometry.wavelength
    c = dark_fringe_distance(geometry)
    grid = distance_grid(c, lam, lam / 2000)
    w1 = fwhm_of_feature(noise_free_curve(params, geometry, PulseSequence(n_pi=1), grid), c)
    w4 = fwhm_of_feature(noise_free_curve(params, geometry, PulseSequence(n_pi=4), grid), c)
    assert abs(w1 / w4 - 4) / 4 < 0.1


def test_noisy_fwhm_with_smoothing(params, geometry):
    lam = geometry.wavelength
    c = dark_fringe_distance(geometry)
    grid = distance_grid(c, lam, lam / 400)
    seq = PulseSequence(n_pi=2, repeats=2_000_000)
    curve = scan_curve(params, geometry, seq, grid, seed=11)
    assert fwhm_of_feature(curve, c, smooth=9) == pytest.approx(fwhm_oracle(2, lam), rel=0.05)


def test_dark_fringe_distance(geometry):
    lam = geometry.wavelength
    L = dark_fringe_distance(geometry, 2.0)
    assert abs(L - 2.0) <= lam / 4
    assert np.cos(2 * np.pi * L / lam) == pytest.approx(0.0, abs=1e-12)


def test_response_curve_basic():
    x = np.linspace(0, 1, 11)
    assert np.all(response_curve(ScanCurve(x, np.full(11, 0.7))).values == 0)
    lin = response_curve(ScanCurve(x, 3 * x + 1)).values
    assert np.allclose(lin, 3.0)


@pytest.mark.parametrize("n", [1, 4])
def test_max_response_matches_oracle(params, geometry, n):
    slope, _ = max_response(params, geometry, n)
    assert slope == pytest.approx(max_slope_oracle(n, params.contrast, params.decay_time, geometry.wavelength), rel=1e-3)


def test_response_ratio_properties(params, geometry):
    assert response_ratio(3, 3, params, geometry) == 1.0
    r = response_ratio(4, 1, params, geometry)
    assert r > 2.0
    lam = geometry.wavelength
    oracle = max_slope_oracle(4, 1, params.decay_time, lam) / max_slope_oracle(1, 1, params.decay_time, lam)
    assert r == pytest.approx(oracle, rel=1e-3)
    # contrast cancels
    half = replace(params, contrast=params.contrast / 2)
    assert response_ratio(4, 1, half, geometry) == pytest.approx(r, rel=1e-10)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_response_ratio_without_decay(geometry, n):
    p = NVEnsembleParams(decay_time=1e300)
    lam = geometry.wavelength
    oracle = max_slope_oracle(n, 1, 1e300, lam) / max_slope_oracle(1, 1, 1e300, lam)
    r = response_ratio(n, 1, p, geometry)
    assert r == pytest.approx(oracle, rel=1e-3)
    # steepest-slope scaling: N times the geometric factor ratio, within 15% of N
    assert r == pytest.approx(n, rel=0.15)


def test_field_sensitivity_examples():
    eta = field_sensitivity(0.14e-2, 0.27, 1.1e-2 / 1e-9)
    assert eta == pytest.approx(66.1e-12, rel=1e-3)
    assert full_collection_sensitivity(eta, 0.1) == pytest.approx(20.9e-12, rel=2e-3)
    assert field_sensitivity(0.14e-2, 0.27, 1e30) < 1e-30


def test_electric_sensitivity_examples():
    assert electric_sensitivity(21e-12) == pytest.approx(6.30e-3, rel=2e-3)  # 63 uV/cm
    assert electric_sensitivity(0.0) == 0.0
    assert electric_sensitivity(66e-12) / 1e-4 == pytest.approx(198, rel=2e-3)


@given(st.floats(1e-6, 1.0), st.floats(0.1, 10.0))
def test_linearity_in_noise(sigma, scale):
    assert field_sensitivity(scale * sigma, 0.27, 1e7) == pytest.approx(scale * field_sensitivity(sigma, 0.27, 1e7))
    assert ranging_accuracy(scale * sigma, 26.0) == pytest.approx(scale * ranging_accuracy(sigma, 26.0))
    assert phase_sensitivity(scale * sigma, 0.1) == pytest.approx(scale * phase_sensitivity(sigma, 0.1))


def test_sensitivity_formula_scaling():
    base = sensitivity_formula(265e-9, 1100e-9, 460e-9, 2.8e10, 7.6e3, 0.1, 1e6)
    assert sensitivity_formula(265e-9, 1100e-9, 460e-9, 2.8e10, 2 * 7.6e3, 0.1, 1e6) == pytest.approx(base / 2)
    assert sensitivity_formula(0.0, 1100e-9, 460e-9) == np.inf


def _grid_argmin(t_det, tau):
    t = np.arange(1, int(10 * tau / 1e-10) + 1) * 1e-10  # 0.1 ns steps
    return t[np.argmin(np.sqrt(1 + t / t_det) / (t * np.exp(-t / tau)))]


def test_optimal_duration_vs_grid():
    opt = optimal_rf_duration(1100e-9, 460e-9)
    assert opt == pytest.approx(_grid_argmin(1100e-9, 460e-9), abs=0.1e-9)
    assert opt == pytest.approx(400e-9, abs=5e-9)
    ratio = sensitivity_formula(265e-9, 1100e-9, 460e-9) / sensitivity_formula(opt, 1100e-9, 460e-9)
    assert 1.05 <= ratio <= 1.15
    assert optimal_rf_duration(np.inf, 460e-9) == pytest.approx(460e-9, abs=0.1e-9)


@given(st.floats(100e-9, 5e-6), st.floats(50e-9, 5e-6))
def test_sensitivity_unimodal(t_det, tau):
    t = np.linspace(tau / 1000, 10 * tau, 4001)
    eta = np.log(sensitivity_formula(t, t_det, tau))
    d = np.sign(np.diff(eta))
    d = d[d != 0]
    assert np.sum(d[1:] != d[:-1]) <= 1
    opt = optimal_rf_duration(t_det, tau)
    assert 0 < opt < 10 * tau
    assert eta.min() >= np.log(sensitivity_formula(opt, t_det, tau)) - 1e-9


def test_ranging_and_phase_examples():
    acc = ranging_accuracy(0.077e-2, 2.6e-2 / 1e-3)
    assert acc == pytest.approx(29.6e-6, rel=2e-3)
    assert ranging_accuracy(0.0, 26.0) == 0.0
    assert ranging_accuracy(0.14e-2, 0.9e-2 / 1e-3) == pytest.approx(156e-6, rel=3e-3)
    lam = 2.99792458e8 / 2.885e9
    assert phase_sensitivity(acc, lam) == pytest.approx(3.58e-3, rel=3e-3)
    assert phase_sensitivity(0.0, lam) == 0.0
    assert phase_sensitivity(lam / (4 * np.pi), lam) == pytest.approx(1.0)


def _fd_contrast_oracle(params, target, t_rf):
    """Finite-difference slope of the simulator's mean signal vs free-space field, at C = 1."""
    p1 = replace(params, contrast=1.0)
    seq = PulseSequence(n_pi=0, rf_duration=t_rf)
    b = np.linspace(0, 10e-9, 20001)
    s = np.array([mean_normalized_signal(p1, RangingGeometry(reference_amplitude=x, signal_amplitude=0.0), seq)
                  for x in b])
    return target / np.abs(np.gradient(s, b)).max()


def test_calibrate_contrast_against_finite_differences(params):
    C = calibrate_contrast(1.1e-2 / 1e-9, params, 265e-9)
    assert C == pytest.approx(_fd_contrast_oracle(params, 1.1e-2 / 1e-9, 265e-9), rel=1e-5)
    assert C == pytest.approx(params.contrast, rel=1e-6)  # frozen default
    assert calibrate_contrast(0.0, params, 265e-9) == 0.0
    doubled = replace(params, conversion_gain=2 * params.conversion_gain)
    assert calibrate_contrast(1.1e7, doubled, 265e-9) == pytest.approx(C / 2, rel=1e-9)
    with pytest.raises(UnreachableResponseError):
        calibrate_contrast(1e12, params, 265e-9)


def test_operating_field_is_quarter_rotation(params):
    b = operating_field(params, 265e-9)
    omega = 2 * np.pi * params.gyromagnetic_ratio * params.conversion_gain * b
    assert omega * 265e-9 == pytest.approx(np.pi / 2, rel=1e-6)
