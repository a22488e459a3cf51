"""Free-space RF interferometer: distance -> phase -> field at the sensor."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .errors import DomainError


def wavelength(frequency: float) -> float:
    """Free-space wavelength (m) of a carrier at ``frequency`` (Hz)."""
    if not frequency > 0:
        raise DomainError(f"carrier frequency must be positive, got {frequency!r}")
    return SPEED_OF_LIGHT / frequency


@dataclass(frozen=True)
class RangingGeometry:
    """Carrier and path amplitudes of the two-arm interferometer.

    ``reference_amplitude`` and ``signal_amplitude`` are the free-space
    magnetic amplitudes (T) of the direct and backscattered paths at the
    sensor. Path loss over a scan is neglected.
    """

    carrier_frequency: float = 2.885e9
    target_distance: float = 2.0
    reference_amplitude: float = 39e-9
    signal_amplitude: float = 39e-9

    def __post_init__(self):
        if not self.carrier_frequency > 0:
            raise DomainError("carrier_frequency must be positive")
        if self.target_distance < 0:
            raise DomainError("target_distance must be non-negative")
        if self.reference_amplitude < 0 or self.signal_amplitude < 0:
            raise DomainError("path amplitudes must be non-negative")

    @property
    def wavelength(self) -> float:
        return wavelength(self.carrier_frequency)

    @property
    def peak_amplitude(self) -> float:
        """Free-space amplitude at constructive interference, ``B_a + B_b``."""
        return self.reference_amplitude + self.signal_amplitude

    def at_distance(self, distance: float) -> "RangingGeometry":
        return replace(self, target_distance=distance)


def phase_from_distance(distance, wavelength):
    """Round-trip phase ``4 pi L / lambda`` (rad), not reduced modulo 2 pi."""
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    L = np.asarray(distance, dtype=float)
    if np.any(L < 0):
        raise DomainError("distance must be non-negative")
    phi = 4.0 * np.pi * L / wavelength
    return float(phi) if phi.ndim == 0 else phi


def interference_amplitude(reference_amplitude, signal_amplitude, phase):
    """Magnitude of the superposed free-space field (T).

    For equal amplitudes ``B1`` this is ``2 B1 |cos(phase/2)|``; that branch
    is evaluated in closed form so the reduction holds to rounding error.
    """
    a = np.asarray(reference_amplitude, dtype=float)
    b = np.asarray(signal_amplitude, dtype=float)
    if np.any(a < 0) or np.any(b < 0):
        raise DomainError("path amplitudes must be non-negative")
    phi = np.asarray(phase, dtype=float)
    general = np.sqrt(np.maximum(a * a + b * b + 2.0 * a * b * np.cos(phi), 0.0))
    equal = 2.0 * a * np.abs(np.cos(0.5 * phi))
    out = np.where(a == b, equal, general)
    return float(out) if out.ndim == 0 else out


def local_field(free_space_field, gain):
    """Field at the NV layer after antenna focusing, ``k * B_RF``."""
    if not gain > 0:
        raise DomainError(f"conversion gain must be positive, got {gain!r}")
    b = np.asarray(free_space_field, dtype=float)
    if np.any(b < 0):
        raise DomainError("free-space field must be non-negative")
    out = gain * b
    return float(out) if out.ndim == 0 else out


def field_at_sensor(geometry: RangingGeometry, distance=None):
    """Free-space interference amplitude for the geometry (optionally at other distances)."""
    L = geometry.target_distance if distance is None else distance
    phi = phase_from_distance(L, geometry.wavelength)
    return interference_amplitude(geometry.reference_amplitude, geometry.signal_amplitude, phi)
