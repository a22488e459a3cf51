"""
Statistics over uniformly sampled traces.

The Allan deviation here is the overlapping estimator on averaged values
(not phase data): with ``ybar_i`` the mean of samples ``i .. i+m-1``,

    sigma^2(m dt) = sum_{i=0}^{M-2m} (ybar_{i+m} - ybar_i)^2 / (2 (M - 2m + 1))
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class TimeSeries:
    samples: np.ndarray
    sample_interval: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size < 2:
            raise DomainError("a time series needs at least two samples")
        if not self.sample_interval > 0:
            raise DomainError("sample_interval must be positive")
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.sample_interval * np.arange(self.samples.size)


def _window(tau: float, dt: float) -> int | None:
    """Integer window length for averaging time ``tau``, or None if off-grid."""
    m = int(round(tau / dt))
    if m < 1 or abs(m * dt - tau) > 1e-9 * max(tau, dt):
        return None
    return m


def normalized_std(series: TimeSeries, averaging_time: float) -> float:
    """Population std of non-overlapping window means of length ``averaging_time``."""
    if averaging_time < series.sample_interval * (1 - 1e-12):
        raise DomainError("averaging_time is shorter than the sample interval")
    m = max(1, int(np.floor(averaging_time / series.sample_interval + 1e-9)))
    n_windows = len(series) // m
    if n_windows < 2:
        raise DomainError("fewer than two complete averaging windows")
    means = series.samples[: n_windows * m].reshape(n_windows, m).mean(axis=1)
    return float(np.std(means))


def allan_deviation(series: TimeSeries, taus) -> list[tuple[float, float]]:
    """Overlapping Allan deviation at each averaging time in ``taus``.

    ``tau`` must be an integer multiple ``m`` of the sample interval with
    ``2m <= len(series)``; entries that are not get ``nan`` and the rest are
    still computed.
    """
    x = series.samples - series.samples.mean()
    M = x.size
    csum = np.concatenate(([0.0], np.cumsum(x)))
    out = []
    for tau in np.atleast_1d(np.asarray(taus, dtype=float)):
        m = _window(float(tau), series.sample_interval)
        if m is None or 2 * m > M:
            out.append((float(tau), float("nan")))
            continue
        ybar = (csum[m:] - csum[:-m]) / m
        d = ybar[m:] - ybar[:-m]
        avar = np.dot(d, d) / (2.0 * (M - 2 * m + 1))
        out.append((float(tau), float(np.sqrt(avar))))
    return out


def octave_taus(series: TimeSeries, points_per_decade: int = 8) -> np.ndarray:
    """Log-spaced valid averaging times from one sample up to half the record."""
    m_max = len(series) // 2
    ms = np.unique(np.round(np.logspace(0, np.log10(m_max), int(points_per_decade * np.log10(m_max)) + 1)))
    return ms.astype(int) * series.sample_interval


def ranging_deviation(allan, response_per_length: float) -> list[tuple[float, float]]:
    """Convert ``(tau, sigma_I)`` pairs into distance deviations ``sigma_I / (dI/dL)``."""
    if not response_per_length > 0:
        raise DomainError("response_per_length must be positive")
    return [(float(t), float(s) / response_per_length) for t, s in allan]


def shot_noise_extrapolate(sigma_ref: float, tau_ref: float, tau) -> np.ndarray | float:
    """White-noise ``1/sqrt(tau)`` extrapolation from ``sigma_ref`` at ``tau_ref``."""
    out = sigma_ref * np.sqrt(tau_ref / np.asarray(tau, dtype=float))
    return float(out) if out.ndim == 0 else out


def loglog_slope(x, y) -> tuple[float, float]:
    """Least-squares slope of ``log y`` vs ``log x`` and its standard error."""
    lx, ly = np.log(np.asarray(x, float)), np.log(np.asarray(y, float))
    (slope, _), cov = np.polyfit(lx, ly, 1, cov=True)
    return float(slope), float(np.sqrt(cov[0, 0]))
