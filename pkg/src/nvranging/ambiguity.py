"""
Integer ambiguity of phase ranging and Doppler checks.

A single carrier ``f`` measures distance modulo ``c / (2 f)``. Reading the
phase on both NV transitions gives a beat ("wide-lane") phase whose period
is ``c / (2 (f+ - f-))``; the coarse distance from the beat fixes the
fringe index of the fine phase at ``f+``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .errors import AmbiguityError, DomainError
from .interferometer import phase_from_distance, wavelength

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class DualPhaseMeasurement:
    phase_plus: float
    phase_minus: float
    omega_plus: float
    omega_minus: float

    def __post_init__(self):
        if not self.omega_plus > self.omega_minus > 0:
            raise DomainError("need omega_plus > omega_minus > 0")


@dataclass(frozen=True)
class AmbiguityResolution:
    distance: float
    integer: int
    coarse_distance: float
    residual: float


def max_unambiguous_range_single(frequency: float) -> float:
    if not frequency > 0:
        raise DomainError("frequency must be positive")
    return SPEED_OF_LIGHT / (2.0 * frequency)


def max_unambiguous_range_dual(omega_plus: float, omega_minus: float) -> float:
    beat = omega_plus - omega_minus
    if beat == 0:
        raise DomainError("degenerate frequencies: beat is zero")
    if beat < 0:
        raise DomainError("omega_plus must exceed omega_minus")
    return SPEED_OF_LIGHT / (2.0 * beat)


def range_extension_factor(omega_plus: float, omega_minus: float) -> float:
    return omega_plus / (omega_plus - omega_minus)


def forward_phases(distance: float, omega_plus: float, omega_minus: float,
                   phase_noise: float = 0.0, rng: np.random.Generator | None = None) -> DualPhaseMeasurement:
    """Wrapped phases at both carriers for a target at ``distance``."""
    phases = np.array([
        phase_from_distance(distance, wavelength(omega_plus)),
        phase_from_distance(distance, wavelength(omega_minus)),
    ])
    if phase_noise > 0:
        if rng is None:
            raise ValueError("phase noise needs an rng")
        phases = phases + rng.normal(0.0, phase_noise, size=2)
    phases = np.mod(phases, TWO_PI)
    return DualPhaseMeasurement(float(phases[0]), float(phases[1]), omega_plus, omega_minus)


def resolve_ambiguity(m: DualPhaseMeasurement, max_residual: float | None = None) -> AmbiguityResolution:
    """Distance and fringe index from a dual-frequency phase pair.

    Raises :class:`AmbiguityError` when coarse and fine estimates disagree by
    more than ``max_residual`` (default: a quarter wavelength, half a fine
    fringe).
    """
    half_fine = wavelength(m.omega_plus) / 2
    half_beat = max_unambiguous_range_dual(m.omega_plus, m.omega_minus)
    beat_phase = np.mod(m.phase_plus - m.phase_minus, TWO_PI)
    coarse = beat_phase / TWO_PI * half_beat
    frac = m.phase_plus / TWO_PI
    n = int(np.rint(coarse / half_fine - frac))
    fine = (n + frac) * half_fine
    residual = coarse - fine
    limit = half_fine / 2 if max_residual is None else max_residual
    if not np.isfinite(residual) or abs(residual) > limit:
        raise AmbiguityError(f"coarse/fine mismatch {residual:.3e} m exceeds {limit:.3e} m")
    return AmbiguityResolution(float(fine), n, float(coarse), float(residual))


def doppler_shift(velocity, wavelength: float):
    """Signed two-way Doppler shift ``2 v / lambda`` (Hz); positive when approaching."""
    if not wavelength > 0:
        raise DomainError("wavelength must be positive")
    return 2.0 * np.asarray(velocity, dtype=float) / wavelength if np.ndim(velocity) else 2.0 * velocity / wavelength


def doppler_negligible(doppler: float, odmr_linewidth: float, margin: float = 100.0) -> tuple[bool, float]:
    """Whether the shift sits two decades inside the ODMR linewidth; also the ratio."""
    if not odmr_linewidth > 0:
        raise DomainError("linewidth must be positive")
    ratio = abs(doppler) / odmr_linewidth
    return ratio < 1.0 / margin, ratio
