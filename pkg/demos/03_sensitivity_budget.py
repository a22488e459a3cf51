# From measured noise figures to sensitivities. The field and ranging numbers
# are simple ratios of noise to response; the RF-duration trade-off is the
# only place where an optimisation is needed.

import numpy as np

from nvranging import electric_sensitivity, field_sensitivity, optimal_rf_duration, phase_sensitivity
from nvranging import ranging_accuracy, sensitivity_formula
from nvranging.analysis import full_collection_sensitivity

eta = field_sensitivity(0.14e-2, 0.27, 1.1e-2 / 1e-9)
eta_full = full_collection_sensitivity(eta, 0.1)
print(f"field sensitivity           {eta * 1e12:6.1f} pT/sqrt(Hz)")
print(f"  with full collection      {eta_full * 1e12:6.1f} pT/sqrt(Hz)")
print(f"  as an electric field      {electric_sensitivity(eta_full) * 1e4:6.1f} uV/cm/sqrt(Hz)")

acc = ranging_accuracy(0.077e-2, 2.6e-2 / 1e-3)
print(f"ranging accuracy at 1 s     {acc * 1e6:6.1f} um")
print(f"phase sensitivity           {phase_sensitivity(acc, 0.1039142):.2e} rad/sqrt(Hz)")

# Relative sensitivity against RF duration for a 1.1 us dead time.
tau, t_det = 460e-9, 1100e-9
t = np.array([50, 100, 200, 300, 400, 500, 700, 1000]) * 1e-9
rel = sensitivity_formula(t, t_det, tau)
rel = rel / rel.min()
print("\n t_RF (ns)   relative eta")
for ti, r in zip(t, rel):
    print(f"  {ti * 1e9:6.0f}     {r:.3f}")
print(f"optimum {optimal_rf_duration(t_det, tau) * 1e9:.1f} ns; "
      f"without dead time it moves to tau = {optimal_rf_duration(np.inf, tau) * 1e9:.1f} ns")
