"""Simulation and analysis of NV-ensemble phase ranging with N-pi pulse driving."""

from .ambiguity import (
    DualPhaseMeasurement,
    doppler_negligible,
    doppler_shift,
    max_unambiguous_range_dual,
    max_unambiguous_range_single,
    resolve_ambiguity,
)
from .analysis import (
    ScanCurve,
    calibrate_contrast,
    electric_sensitivity,
    field_sensitivity,
    fwhm_of_feature,
    optimal_rf_duration,
    phase_sensitivity,
    ranging_accuracy,
    response_curve,
    response_ratio,
    sensitivity_formula,
)
from .config import InstrumentConfig, load_config
from .errors import AmbiguityError, ConfigError, DomainError, UnboundedFeatureError, UnreachableResponseError
from .interferometer import RangingGeometry, interference_amplitude, local_field, phase_from_distance
from .noise import TimeSeries, allan_deviation, normalized_std, ranging_deviation
from .physics import NVEnsembleParams, SpinState, odmr_contrast, rabi_frequency, rabi_population, resonance_frequencies
from .pulses import DetectionRecord, PulseSequence, expected_fluorescence, n_pi_duration, scan_distance, simulate_measurement

__version__ = "0.1.0"
