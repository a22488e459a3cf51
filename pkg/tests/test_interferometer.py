import numpy as np
import pytest
from hypothesis import given, strategies as st

from nvranging.errors import DomainError
from nvranging.interferometer import (
    RangingGeometry,
    SPEED_OF_LIGHT,
    field_at_sensor,
    interference_amplitude,
    local_field,
    phase_from_distance,
    wavelength,
)


def test_wavelength_default_carrier():
    lam = wavelength(2.885e9)
    assert lam == pytest.approx(0.103913, rel=2e-5)
    assert lam * 2.885e9 == pytest.approx(SPEED_OF_LIGHT, rel=1e-15)
    assert RangingGeometry().wavelength == lam


def test_phase_examples():
    lam = wavelength(2.885e9)
    assert phase_from_distance(0.0, lam) == 0.0
    assert phase_from_distance(lam / 4, lam) == pytest.approx(np.pi)
    assert phase_from_distance(lam / 2, lam) == pytest.approx(2 * np.pi)
    assert phase_from_distance(10 * lam, lam) == pytest.approx(40 * np.pi)  # not wrapped
    with pytest.raises(DomainError):
        phase_from_distance(1.0, 0.0)


@given(st.floats(0, 10), st.floats(0, 10))
def test_phase_additive(a, b):
    lam = 0.1
    assert phase_from_distance(a + b, lam) == pytest.approx(
        phase_from_distance(a, lam) + phase_from_distance(b, lam), rel=1e-12, abs=1e-12)


def test_interference_examples():
    assert interference_amplitude(39e-9, 39e-9, 0.0) == pytest.approx(78e-9, rel=1e-15)
    assert interference_amplitude(39e-9, 39e-9, np.pi) == pytest.approx(0.0, abs=1e-22)
    assert interference_amplitude(39e-9, 39e-9, np.pi / 2) == pytest.approx(55.154e-9, rel=1e-4)


def test_equal_amplitude_reduction_dense():
    a = 39e-9
    phi = np.linspace(-20, 20, 100001)
    general = np.sqrt(2 * a * a + 2 * a * a * np.cos(phi))
    closed = 2 * a * np.abs(np.cos(phi / 2))
    assert np.max(np.abs(interference_amplitude(a, a, phi) - closed)) < 1e-12 * a
    assert np.max(np.abs(general - closed)) < 1e-7 * a  # sqrt of a near-zero difference


@given(st.floats(0, 1e-6), st.floats(0, 1e-6), st.floats(-50, 50))
def test_triangle_periodic_even(a, b, phi):
    val = interference_amplitude(a, b, phi)
    tol = 1e-9 * (a + b) + 1e-30
    assert abs(a - b) - tol <= val <= a + b + tol
    assert interference_amplitude(a, b, -phi) == pytest.approx(val, rel=1e-12, abs=1e-20)
    assert interference_amplitude(a, b, phi + 2 * np.pi) == pytest.approx(val, rel=1e-9, abs=1e-9 * (a + b) + 1e-20)


def test_local_field():
    assert local_field(0.0, 7.6e3) == 0.0
    assert local_field(78e-9, 7.6e3) == pytest.approx(0.5928e-3, rel=1e-12)
    assert local_field(3e-9, 1.0) == 3e-9
    with pytest.raises(DomainError):
        local_field(1e-9, 0.0)


def test_field_at_sensor_follows_distance():
    g = RangingGeometry()
    lam = g.wavelength
    assert field_at_sensor(g, lam / 4) == pytest.approx(0.0, abs=1e-21)
    assert field_at_sensor(g, lam / 2) == pytest.approx(78e-9, rel=1e-12)
