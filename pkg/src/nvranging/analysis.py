"""
Ranging metrics from scan curves and noise figures.

Covers the fringe FWHM, the position response dI/dL, the magnetic and
electric field sensitivity, the pulse-length dependence of the field
sensitivity, ranging accuracy and RF phase sensitivity, and calibration of
the optical contrast against a measured field response.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.optimize import brentq, minimize_scalar

from .errors import DomainError, UnboundedFeatureError, UnreachableResponseError
from .interferometer import RangingGeometry
from .physics import NVEnsembleParams
from .pulses import PulseSequence, mean_normalized_signal, scan_distance


@dataclass(frozen=True)
class ScanCurve:
    distances: np.ndarray
    values: np.ndarray
    n_pi: int | None = None
    sequence: PulseSequence | None = None
    geometry: RangingGeometry | None = field(default=None, compare=False)

    def __post_init__(self):
        L = np.asarray(self.distances, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if L.ndim != 1 or L.shape != v.shape:
            raise DomainError("distances and values must be 1-D arrays of equal length")
        if L.size < 3:
            raise DomainError("a scan curve needs at least 3 points")
        if np.any(np.diff(L) <= 0):
            raise DomainError("distances must be strictly increasing")
        object.__setattr__(self, "distances", L)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_points(cls, points, **meta):
        L, v = zip(*points)
        return cls(np.array(L), np.array(v), **meta)


# ---------------------------------------------------------------------------
# Scan construction
# ---------------------------------------------------------------------------

def dark_fringe_distance(geometry: RangingGeometry, near: float | None = None) -> float:
    """Distance closest to ``near`` where the round-trip phase is an odd multiple of pi.

    That is the zero-field point of the interferometer and the center of the
    narrowest fluorescence feature.
    """
    lam = geometry.wavelength
    near = geometry.target_distance if near is None else near
    n = max(0, round((near - lam / 4) / (lam / 2)))
    return lam / 4 + n * lam / 2


def distance_grid(center: float, span: float, step: float) -> np.ndarray:
    half = int(np.ceil(0.5 * span / step))
    grid = center + step * np.arange(-half, half + 1)
    if grid[0] < 0:
        raise DomainError("scan extends to negative distance")
    return grid


def noise_free_curve(params, geometry, sequence: PulseSequence, distances) -> ScanCurve:
    L = np.asarray(distances, dtype=float)
    values = mean_normalized_signal(params, geometry, sequence, L)
    return ScanCurve(L, values, n_pi=sequence.n_pi, sequence=sequence, geometry=geometry)


def scan_curve(params, geometry, sequence, distances, seed=0, *, noise_free=False) -> ScanCurve:
    """:func:`nvranging.pulses.scan_distance` wrapped into a :class:`ScanCurve`."""
    if noise_free:
        return noise_free_curve(params, geometry, sequence, distances)
    pts = scan_distance(params, geometry, sequence, distances, seed)
    return ScanCurve.from_points(pts, n_pi=sequence.n_pi, sequence=sequence, geometry=geometry)


# ---------------------------------------------------------------------------
# Curve metrics
# ---------------------------------------------------------------------------

def _nearest_extremum(y: np.ndarray, start: int) -> int:
    left, right = np.diff(y)[:-1], np.diff(y)[1:]
    interior = np.flatnonzero((left * right <= 0) & ~((left == 0) & (right == 0))) + 1
    if interior.size == 0:
        raise UnboundedFeatureError("curve has no interior extremum")
    return int(interior[np.argmin(np.abs(interior - start))])


def _walk_to_base(y, i, step, sign):
    """Follow the curve away from extremum ``i`` while it keeps falling (sign=+1) or rising."""
    j = i
    while 0 <= j + step < y.size and sign * (y[j] - y[j + step]) > 0:
        j += step
    if j + step < 0 or j + step >= y.size:
        raise UnboundedFeatureError("feature truncated at the curve edge")
    return y[j]


def _crossing(L, y, i, step, half, sign):
    a = i
    while sign * (y[a] - half) > 0:
        a += step
        if a < 0 or a >= y.size:
            raise UnboundedFeatureError("half-maximum crossing outside the scanned range")
    b = a - step
    # linear interpolation between the last point above and the first at/below half
    return L[b] + (half - y[b]) * (L[a] - L[b]) / (y[a] - y[b])


def fwhm_of_feature(curve: ScanCurve, center_hint: float, *, smooth: int = 1) -> float:
    """Full width at half maximum of the extremum nearest ``center_hint``.

    The half level sits midway between the extremum and the mean of the two
    neighbouring opposite extrema. Crossings are linearly interpolated.
    ``smooth`` > 1 applies a centered moving average first (for noisy scans).
    """
    L, y = curve.distances, curve.values
    if smooth > 1:
        kernel = np.ones(int(smooth)) / int(smooth)
        y = np.convolve(y, kernel, mode="same")
        pad = int(smooth) // 2
        L, y = L[pad : L.size - pad], y[pad : y.size - pad]
    i = _nearest_extremum(y, int(np.argmin(np.abs(L - center_hint))))
    sign = 1.0 if y[i] >= y[i - 1] else -1.0
    baseline = 0.5 * (_walk_to_base(y, i, -1, sign) + _walk_to_base(y, i, +1, sign))
    half = 0.5 * (y[i] + baseline)
    return float(_crossing(L, y, i, +1, half, sign) - _crossing(L, y, i, -1, half, sign))


def response_curve(curve: ScanCurve) -> ScanCurve:
    """dI/dL (1/m): central differences inside, one-sided at the ends."""
    L, y = curve.distances, curve.values
    d = np.empty_like(y)
    d[1:-1] = (y[2:] - y[:-2]) / (L[2:] - L[:-2])
    d[0] = (y[1] - y[0]) / (L[1] - L[0])
    d[-1] = (y[-1] - y[-2]) / (L[-1] - L[-2])
    return ScanCurve(curve.distances, d, curve.n_pi, curve.sequence, curve.geometry)


def max_response(
    params: NVEnsembleParams,
    geometry: RangingGeometry,
    n_pi: int,
    *,
    sequence: PulseSequence | None = None,
    step: float | None = None,
) -> tuple[float, float]:
    """Largest noise-free ``|dI/dL|`` over one fringe period and where it occurs."""
    sequence = PulseSequence(n_pi=n_pi) if sequence is None else sequence
    lam = geometry.wavelength
    step = lam / 2000 if step is None else step
    center = dark_fringe_distance(geometry)
    grid = distance_grid(center, lam / 2 + 4 * step, step)
    d = np.abs(response_curve(noise_free_curve(params, geometry, sequence, grid)).values)
    k = int(np.argmax(d[1:-1])) + 1
    return float(d[k]), float(grid[k])


def response_ratio(n_hi: int, n_lo: int, params, geometry, *, step=None) -> float:
    """Ratio of maximal position responses for two pulse numbers."""
    if n_hi < 1 or n_lo < 1:
        raise DomainError("pulse numbers must be >= 1")
    if n_hi == n_lo:
        return 1.0
    hi, _ = max_response(params, geometry, n_hi, step=step)
    lo, _ = max_response(params, geometry, n_lo, step=step)
    return hi / lo


# ---------------------------------------------------------------------------
# Sensitivities
# ---------------------------------------------------------------------------

def field_sensitivity(noise_sigma, measurement_time, response_per_field):
    """Magnetic field sensitivity ``sigma sqrt(t_m) / (dI/dB)`` in T/sqrt(Hz)."""
    if not (measurement_time > 0 and response_per_field > 0):
        raise DomainError("measurement_time and response must be positive")
    return noise_sigma * np.sqrt(measurement_time) / response_per_field


def full_collection_sensitivity(eta, collection_factor):
    """Shot-noise rescaling of a sensitivity measured with attenuated collection."""
    if not 0 < collection_factor <= 1:
        raise DomainError("collection_factor must lie in (0, 1]")
    return eta * np.sqrt(collection_factor)


def electric_sensitivity(eta_b):
    """Plane-wave electric-field equivalent ``c * eta_B`` in (V/m)/sqrt(Hz)."""
    if eta_b < 0:
        raise DomainError("sensitivity must be non-negative")
    return SPEED_OF_LIGHT * eta_b


def sensitivity_formula(t_rf, t_det, tau, gamma=1.0, gain=1.0, contrast=1.0, epsilon=1.0):
    """Field sensitivity vs RF pulse length, up to a constant factor.

        eta = sqrt(1 + t_rf/t_det) / (gamma k C sqrt(eps) * t_rf exp(-t_rf/tau))

    ``t_det = inf`` drops the duty-cycle term; ``t_rf = 0`` gives ``inf``.
    """
    t = np.asarray(t_rf, dtype=float)
    if np.any(t < 0) or not (t_det > 0 and tau > 0):
        raise DomainError("durations must be positive")
    prefactor = 1.0 / (gamma * gain * contrast * np.sqrt(epsilon))
    with np.errstate(divide="ignore"):
        eta = prefactor * np.sqrt(1.0 + t / t_det) / (t * np.exp(-t / tau))
    eta = np.where(t == 0, np.inf, eta)
    return float(eta) if eta.ndim == 0 else eta


def optimal_rf_duration(t_det: float, tau: float) -> float:
    """Pulse length minimising :func:`sensitivity_formula` on ``(0, 10 tau]``."""
    if not (t_det > 0 and tau > 0):
        raise DomainError("durations must be positive")

    def log_eta(t):
        return 0.5 * np.log1p(t / t_det) - np.log(t) + t / tau

    res = minimize_scalar(log_eta, bounds=(1e-6 * tau, 10 * tau), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x)


def ranging_accuracy(noise_sigma, response_per_length):
    """Distance resolution ``sigma_I / (dI/dL)`` in m."""
    if not response_per_length > 0:
        raise DomainError("response must be positive")
    return noise_sigma / response_per_length


def phase_sensitivity(distance_resolution, wavelength):
    """Round-trip phase equivalent ``4 pi dL / lambda`` in rad."""
    if not wavelength > 0:
        raise DomainError("wavelength must be positive")
    return 4.0 * np.pi * distance_resolution / wavelength


# ---------------------------------------------------------------------------
# Contrast calibration
# ---------------------------------------------------------------------------

def field_response_slope(params: NVEnsembleParams, t_rf: float, free_space_field, contrast=None):
    """``|d(I/I0)/dB_RF|`` (1/T) of the noise-free model at the given drive field."""
    C = params.contrast if contrast is None else contrast
    k_omega = 2 * np.pi * params.gyromagnetic_ratio * params.conversion_gain
    envelope = np.exp(-t_rf / params.decay_time)
    return C * 0.5 * envelope * k_omega * t_rf * np.abs(np.sin(k_omega * np.asarray(free_space_field) * t_rf))


def operating_field(params: NVEnsembleParams, t_rf: float) -> float:
    """Free-space field of steepest fluorescence response for pulse length ``t_rf``."""
    k_omega = 2 * np.pi * params.gyromagnetic_ratio * params.conversion_gain
    b_pi = np.pi / (k_omega * t_rf)
    res = minimize_scalar(lambda b: -field_response_slope(params, t_rf, b, 1.0),
                          bounds=(0.0, b_pi), method="bounded", options={"xatol": b_pi * 1e-10})
    return float(res.x)


def calibrate_contrast(target_response: float, params: NVEnsembleParams, t_rf: float,
                       bias_field: float | None = None) -> float:
    """Contrast for which the small-signal field response equals ``target_response``.

    The response is evaluated at ``bias_field`` (free-space T), by default the
    steepest point of the Rabi curve for a pulse of length ``t_rf``.
    """
    if target_response < 0 or not t_rf > 0:
        raise DomainError("target response must be >= 0 and t_rf > 0")
    if target_response == 0:
        return 0.0
    b = operating_field(params, t_rf) if bias_field is None else bias_field
    unit = float(field_response_slope(params, t_rf, b, 1.0))
    if unit < target_response:
        raise UnreachableResponseError(
            f"response {target_response:.4g}/T needs contrast {target_response / unit:.4g} > 1")
    return brentq(lambda C: unit * C - target_response, 0.0, 1.0, rtol=1e-12, xtol=1e-15)
