# Spin response of the NV ensemble: where the resonances sit for the default
# bias field, and how the ms=0 population evolves under a resonant RF drive.

import numpy as np

from nvranging import NVEnsembleParams, odmr_contrast, rabi_frequency, rabi_population, resonance_frequencies
from nvranging.interferometer import local_field
from nvranging.pulses import n_pi_duration

params = NVEnsembleParams()
w_plus, w_minus = resonance_frequencies(params)
print(f"bias field      {params.bias_field * 1e4:.3f} G")
print(f"resonances      {w_minus / 1e9:.4f} GHz and {w_plus / 1e9:.4f} GHz")

# A coarse ODMR sweep. The dip depth is the optical contrast.
freqs = np.linspace(2.84e9, 2.90e9, 13)
for f, c in zip(freqs, odmr_contrast(freqs, params)):
    print(f"  {f / 1e9:.3f} GHz  {'#' * int(round(400 * c)):<45s} {c:.4f}")

# 39 nT in free space becomes a ~0.3 mT local field after the conversion gain.
b_rf = 2 * 39e-9
omega = rabi_frequency(local_field(b_rf, params.conversion_gain), params)
print(f"\nRabi frequency at the constructive point: {omega / (2 * np.pi) / 1e6:.2f} MHz")
for n in range(1, 7):
    t = n_pi_duration(n, 39e-9, params.conversion_gain, params.gyromagnetic_ratio)
    rho = rabi_population(omega, t, params.decay_time).population_ms0
    print(f"  N={n}  pulse {t * 1e9:6.2f} ns   ms=0 population {rho:.4f}")
