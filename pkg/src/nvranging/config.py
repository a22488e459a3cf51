"""Instrument configuration: a strict JSON file mapped onto the model dataclasses."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .errors import ConfigError, DomainError
from .interferometer import RangingGeometry
from .physics import NVEnsembleParams
from .pulses import PulseSequence


@dataclass(frozen=True)
class AnalysisSettings:
    """Noise figures that turn model responses into sensitivities.

    ``ranging_noise_sigma`` is the normalized noise of the N=4 ranging trace
    at ``ranging_noise_time``; the ``field_*`` entries describe the RF
    amplitude-step measurement (normalized std, its total time, and the
    measured response in 1/T).
    """

    ranging_noise_sigma: float = 0.077e-2
    ranging_noise_time: float = 1.0
    field_noise_sigma: float = 0.14e-2
    field_measurement_time: float = 0.27
    field_response: float = 1.1e-2 / 1e-9
    field_rf_duration: float = 265e-9

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise DomainError(f"analysis.{f.name} must be positive")


@dataclass(frozen=True)
class InstrumentConfig:
    nv: NVEnsembleParams = field(default_factory=NVEnsembleParams)
    geometry: RangingGeometry = field(default_factory=RangingGeometry)
    sequence: PulseSequence = field(default_factory=PulseSequence)
    analysis: AnalysisSettings = field(default_factory=AnalysisSettings)
    seed: int = 0
    out: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


_SECTIONS = {
    "nv": NVEnsembleParams,
    "geometry": RangingGeometry,
    "sequence": PulseSequence,
    "analysis": AnalysisSettings,
}


def _build_section(name, cls, raw):
    if not isinstance(raw, dict):
        raise ConfigError(f"section {name!r} must be an object")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown keys in {name!r}: {', '.join(unknown)}")
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name}.{key} must be a number")
    try:
        return cls(**raw)
    except DomainError as exc:
        raise ConfigError(f"invalid {name!r}: {exc}") from exc


def config_from_dict(raw: dict) -> InstrumentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("configuration root must be an object")
    unknown = sorted(set(raw) - set(_SECTIONS) - {"seed", "out"})
    if unknown:
        raise ConfigError(f"unknown top-level keys: {', '.join(unknown)}")
    kwargs = {name: _build_section(name, cls, raw[name]) for name, cls in _SECTIONS.items() if name in raw}
    if "seed" in raw:
        seed = raw["seed"]
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        kwargs["seed"] = seed
    if "out" in raw:
        if raw["out"] is not None and not isinstance(raw["out"], str):
            raise ConfigError("out must be a path string or null")
        kwargs["out"] = raw["out"]
    return InstrumentConfig(**kwargs)


def load_config(path) -> InstrumentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return config_from_dict(raw)
