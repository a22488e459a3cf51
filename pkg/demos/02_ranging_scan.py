# Distance scans around a dark fringe. Longer N-pi pulses sharpen the feature,
# which is what makes the distance readout more sensitive.

import numpy as np

from nvranging import NVEnsembleParams, PulseSequence, RangingGeometry, fwhm_of_feature
from nvranging.analysis import dark_fringe_distance, distance_grid, max_response, noise_free_curve, scan_curve

params = NVEnsembleParams()
geometry = RangingGeometry()
lam = geometry.wavelength
center = dark_fringe_distance(geometry)
print(f"wavelength {lam * 100:.3f} cm, dark fringe at L = {center:.6f} m\n")

grid = distance_grid(center, lam, lam / 2000)
print(" N   FWHM (mm)   max |dI/dL| (%/mm)")
for n in range(1, 7):
    curve = noise_free_curve(params, geometry, PulseSequence(n_pi=n), grid)
    width = fwhm_of_feature(curve, center)
    slope, _ = max_response(params, geometry, n)
    print(f" {n}   {width * 1e3:8.3f}   {slope * 1e-3 * 100:8.3f}")

# A shot-noise limited scan at N=4, 2e5 repeats per point, printed coarsely.
coarse = np.linspace(center - lam / 8, center + lam / 8, 21)
noisy = scan_curve(params, geometry, PulseSequence(n_pi=4), coarse, seed=7)
print("\nN=4 scan (with shot noise)")
for L, s in zip(noisy.distances, noisy.values):
    print(f"  {(L - center) * 1e3:+7.2f} mm  {s:.5f}")
