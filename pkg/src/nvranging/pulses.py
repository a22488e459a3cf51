"""
Measurement sequence: laser init (reference counts), RF drive, laser readout.

Counts are shot-noise limited. Each repeat draws Poisson photon counts; the
sum over repeats of independent Poisson draws is itself Poisson with the
summed mean, so a whole record costs two draws regardless of ``repeats``.

Random streams come from numpy's counter-based Philox generator keyed by a
``SeedSequence``. Scan point ``i`` uses ``SeedSequence(seed, spawn_key=(i,))``,
so the value at a point does not depend on which other points are computed
or in what order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .interferometer import RangingGeometry, field_at_sensor, local_field
from .noise import TimeSeries
from .physics import NVEnsembleParams, SpinState, ms0_population, rabi_frequency

_SEED_LIMIT = 2**64


@dataclass(frozen=True)
class PulseSequence:
    """Timing of one init / RF / readout cycle.

    With ``n_pi >= 1`` the RF duration is derived from the drive strength
    (:func:`n_pi_duration`) and ``rf_duration`` is ignored; ``n_pi = 0``
    uses ``rf_duration`` as given.
    """

    init_duration: float = 550e-9
    rf_duration: float = 265e-9
    readout_duration: float = 550e-9
    n_pi: int = 1
    repeats: int = 200_000

    def __post_init__(self):
        for name in ("init_duration", "rf_duration", "readout_duration"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if int(self.n_pi) != self.n_pi or self.n_pi < 0:
            raise DomainError("n_pi must be a non-negative integer")
        if int(self.repeats) != self.repeats or self.repeats < 1:
            raise DomainError("repeats must be a positive integer")
        object.__setattr__(self, "n_pi", int(self.n_pi))
        object.__setattr__(self, "repeats", int(self.repeats))


@dataclass(frozen=True)
class DetectionRecord:
    reference_counts: float
    signal_counts: float
    normalized_signal: float
    rng_seed: int | None


def _check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int, index: int | None = None) -> np.random.Generator:
    """Philox generator for ``seed``, or for scan point ``index`` under ``seed``."""
    seed = _check_seed(seed)
    if index is None:
        ss = np.random.SeedSequence(seed)
    else:
        ss = np.random.SeedSequence(seed, spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(ss))


def n_pi_duration(n: int, b1: float, gain: float, gamma: float) -> float:
    """RF duration for an N-pi pulse: ``N / (4 k gamma B1)``.

    At the constructive point ``B_RF = 2 B1`` this gives ``Omega t = N pi``.
    """
    if n < 1 or int(n) != n:
        raise DomainError("N must be a positive integer")
    if not (b1 > 0 and gain > 0 and gamma > 0):
        raise DomainError("B1, gain and gamma must be positive")
    return n / (4.0 * gain * gamma * b1)


def rf_duration_for(sequence: PulseSequence, params: NVEnsembleParams, geometry: RangingGeometry) -> float:
    if sequence.n_pi == 0:
        return sequence.rf_duration
    b1 = 0.5 * geometry.peak_amplitude
    if b1 <= 0:
        raise DomainError("an N-pi pulse needs a non-zero RF amplitude")
    return n_pi_duration(sequence.n_pi, b1, params.conversion_gain, params.gyromagnetic_ratio)


def cycle_time(sequence: PulseSequence, params: NVEnsembleParams, geometry: RangingGeometry) -> float:
    return sequence.init_duration + rf_duration_for(sequence, params, geometry) + sequence.readout_duration


def expected_fluorescence(rho, params: NVEnsembleParams, readout_duration: float):
    """Mean detected photons per shot for ms=0 population ``rho``.

    ``rate * collection * t * (1 - C (1 - rho))``; ``rho`` may be a
    :class:`SpinState`, a float or an array.
    """
    if isinstance(rho, SpinState):
        rho = rho.population_ms0
    rho = np.asarray(rho, dtype=float)
    bright = params.photon_rate * params.collection_factor * readout_duration
    out = bright * (1.0 - params.contrast * (1.0 - rho))
    return float(out) if out.ndim == 0 else out


def population_at(params: NVEnsembleParams, geometry: RangingGeometry, sequence: PulseSequence, distance=None):
    """ms=0 population after the RF pulse, for the geometry's (or given) distance."""
    t_rf = rf_duration_for(sequence, params, geometry)
    b_loc = local_field(field_at_sensor(geometry, distance), params.conversion_gain)
    omega = rabi_frequency(b_loc, params)
    return ms0_population(omega, t_rf, params.decay_time)


def mean_normalized_signal(params, geometry, sequence, distance=None):
    """Noise-free ``I(L) / I0`` (vectorised over ``distance``)."""
    rho = population_at(params, geometry, sequence, distance)
    sig = expected_fluorescence(rho, params, sequence.readout_duration)
    ref = expected_fluorescence(1.0, params, sequence.init_duration)
    return sig / ref


def sample_shot_counts(mean_per_shot: float, repeats: int, rng: np.random.Generator) -> np.ndarray:
    """Per-repeat Poisson photon counts (used to validate the summed draw)."""
    return rng.poisson(mean_per_shot, size=int(repeats))


def simulate_measurement(
    params: NVEnsembleParams,
    geometry: RangingGeometry,
    sequence: PulseSequence,
    seed: int | None = 0,
    *,
    noise_free: bool = False,
    rng: np.random.Generator | None = None,
) -> DetectionRecord:
    """Run ``sequence.repeats`` cycles at the geometry's target distance.

    ``noise_free=True`` returns the exact mean counts. An explicit ``rng``
    overrides ``seed`` (used by scans for per-point streams).
    """
    rho = population_at(params, geometry, sequence)
    mean_ref = expected_fluorescence(1.0, params, sequence.init_duration) * sequence.repeats
    mean_sig = expected_fluorescence(rho, params, sequence.readout_duration) * sequence.repeats
    if noise_free:
        ref, sig = mean_ref, mean_sig
    else:
        if rng is None:
            rng = make_rng(seed)
        ref = float(rng.poisson(mean_ref))
        sig = float(rng.poisson(mean_sig))
    normalized = sig / ref if ref > 0 else float("nan")
    return DetectionRecord(ref, sig, normalized, None if seed is None else _check_seed(seed))


def scan_distance(
    params: NVEnsembleParams,
    geometry: RangingGeometry,
    sequence: PulseSequence,
    distances,
    seed: int = 0,
    *,
    noise_free: bool = False,
) -> list[tuple[float, float]]:
    """``(L, normalized_signal)`` for every distance, in input order."""
    distances = [float(L) for L in np.atleast_1d(distances)]
    if not distances:
        raise DomainError("distance grid is empty")
    out = []
    for i, L in enumerate(distances):
        g = geometry.at_distance(L)
        if noise_free:
            rec = simulate_measurement(params, g, sequence, seed, noise_free=True)
        else:
            rec = simulate_measurement(params, g, sequence, seed, rng=make_rng(seed, i))
        out.append((L, rec.normalized_signal))
    return out


def simulate_trace(
    params: NVEnsembleParams,
    geometry: RangingGeometry,
    sequence: PulseSequence,
    duration: float,
    sample_interval: float,
    seed: int = 0,
    *,
    drift_rate: float = 0.0,
    noise_free: bool = False,
) -> TimeSeries:
    """Continuous record of the normalized signal at a fixed target position.

    Each sample integrates as many cycles as fit in ``sample_interval``
    (``sequence.repeats`` is not used). ``drift_rate`` adds a linear ramp
    (normalized units per second) on top of the shot noise.
    """
    if not (duration > 0 and sample_interval > 0):
        raise DomainError("duration and sample_interval must be positive")
    n = int(np.floor(duration / sample_interval + 1e-9))
    if n < 2:
        raise DomainError("trace needs at least two samples")
    repeats = max(1, int(round(sample_interval / cycle_time(sequence, params, geometry))))
    rho = population_at(params, geometry, sequence)
    mean_ref = expected_fluorescence(1.0, params, sequence.init_duration) * repeats
    mean_sig = expected_fluorescence(rho, params, sequence.readout_duration) * repeats
    if noise_free:
        values = np.full(n, mean_sig / mean_ref)
    else:
        rng = make_rng(seed)
        ref = rng.poisson(mean_ref, size=n).astype(float)
        sig = rng.poisson(mean_sig, size=n).astype(float)
        values = sig / ref
    values = values + drift_rate * sample_interval * np.arange(n)
    return TimeSeries(values, sample_interval)


def photon_rate_for_noise(
    noise_sigma: float,
    repeats: int,
    params: NVEnsembleParams,
    sequence: PulseSequence,
    rho: float = 0.5,
) -> float:
    """Full-collection photon rate giving a normalized-signal std ``noise_sigma``.

    Uses the ratio-of-Poissons propagation
    ``sigma^2 = S^2 (1/N_sig + 1/N_ref)`` at ms=0 population ``rho``.
    """
    if not (noise_sigma > 0 and repeats >= 1):
        raise DomainError("noise_sigma and repeats must be positive")
    s = 1.0 - params.contrast * (1.0 - rho)
    # counts per unit photon rate
    ref_unit = params.collection_factor * sequence.init_duration * repeats
    sig_unit = params.collection_factor * sequence.readout_duration * repeats * s
    ratio = s * sequence.readout_duration / sequence.init_duration
    return ratio**2 * (1.0 / sig_unit + 1.0 / ref_unit) / noise_sigma**2
