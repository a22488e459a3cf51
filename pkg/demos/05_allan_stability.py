# A long N=4 tracking record at the steepest point of the fringe. White shot
# noise averages down as 1/sqrt(tau); a slow drift turns the Allan curve up.

import numpy as np
from dataclasses import replace

from nvranging import NVEnsembleParams, PulseSequence, RangingGeometry, allan_deviation
from nvranging.analysis import max_response
from nvranging.noise import loglog_slope, octave_taus
from nvranging.pulses import simulate_trace

params = NVEnsembleParams()
slope, where = max_response(params, RangingGeometry(), 4)
geometry = RangingGeometry().at_distance(where)
seq = PulseSequence(n_pi=4)

for drift in (0.0, 2e-6):
    trace = simulate_trace(params, geometry, seq, 600.0, 0.01, seed=3, drift_rate=drift)
    taus = octave_taus(trace, points_per_decade=3)
    adev = [(t, s) for t, s in allan_deviation(trace, taus) if np.isfinite(s)]
    print(f"\ndrift {drift:g} /s")
    print("   tau (s)    sigma (%)    sigma_L (um)")
    for t, s in adev:
        print(f"  {t:8.2f}   {s * 100:9.5f}   {s / slope * 1e6:9.2f}")
    short = [(t, s) for t, s in adev if t <= 1.0]
    print(f"  short-time slope {loglog_slope(*zip(*short))[0]:.3f}")
