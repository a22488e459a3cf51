"""
Command-line front end.

Subcommands emit CSV or JSON for external plotting:

    nvranging odmr      frequency sweep of the ODMR dips
    nvranging rabi      Rabi oscillation at the constructive drive field
    nvranging scan      normalized ranging signal vs target distance
    nvranging metrics   FWHM, dI/dL, accuracy and sensitivities per N
    nvranging track     time trace at the steepest fringe point + Allan table
    nvranging ambiguity dual-frequency integer ambiguity round trip

Exit codes: 0 ok, 2 usage/config error, 3 physics-domain error,
4 ambiguity resolution failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import ambiguity, analysis, noise, physics, pulses
from .config import InstrumentConfig, load_config
from .errors import AmbiguityError, ConfigError, DomainError
from .interferometer import local_field

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_AMBIGUITY = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def format_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def format_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _require(cond, message):
    if not cond:
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Commands. Each returns the text to emit so tests can call them directly.
# ---------------------------------------------------------------------------

def cmd_odmr(cfg: InstrumentConfig, f_min: float, f_max: float, points: int) -> str:
    _require(points >= 2, "points must be >= 2")
    _require(0 < f_min < f_max, "need 0 < f_min < f_max")
    f = np.linspace(f_min, f_max, points)
    dip = physics.odmr_contrast(f, cfg.nv)
    return format_csv(["frequency_hz", "normalized_fluorescence"], zip(f, 1.0 - dip))


def cmd_rabi(cfg: InstrumentConfig, t_max: float, points: int) -> str:
    _require(points >= 2, "points must be >= 2")
    _require(t_max > 0, "t_max must be positive")
    t = np.linspace(0.0, t_max, points)
    b_loc = local_field(cfg.geometry.peak_amplitude, cfg.nv.conversion_gain)
    omega = physics.rabi_frequency(b_loc, cfg.nv)
    rho = physics.ms0_population(omega, t, cfg.nv.decay_time)
    fl = pulses.expected_fluorescence(rho, cfg.nv, 1.0) / pulses.expected_fluorescence(1.0, cfg.nv, 1.0)
    return format_csv(["time_s", "population", "normalized_fluorescence"], zip(t, rho, fl))


def cmd_scan(cfg: InstrumentConfig, n: int, l_center: float | None, l_span: float | None,
             points: int, repeats: int | None = None, noise_free: bool = False) -> str:
    _require(points >= 2, "points must be >= 2")
    _require(n >= 0, "N must be >= 0")
    lam = cfg.geometry.wavelength
    center = cfg.geometry.target_distance if l_center is None else l_center
    span = lam / 2 if l_span is None else l_span
    _require(span > 0, "L_span must be positive")
    seq = replace(cfg.sequence, n_pi=n, repeats=cfg.sequence.repeats if repeats is None else repeats)
    L = np.linspace(center - span / 2, center + span / 2, points)
    if L[0] < 0:
        raise DomainError("scan extends to negative distance")
    pts = pulses.scan_distance(cfg.nv, cfg.geometry, seq, L, cfg.seed, noise_free=noise_free)
    return format_csv(["distance_m", "normalized_signal"], pts)


def metrics_report(cfg: InstrumentConfig, n_list) -> dict:
    _require(len(n_list) > 0, "N_list must not be empty")
    _require(all(int(n) == n and n >= 1 for n in n_list), "N values must be integers >= 1")
    geo, nv, an = cfg.geometry, cfg.nv, cfg.analysis
    lam = geo.wavelength
    center = analysis.dark_fringe_distance(geo)
    grid = analysis.distance_grid(center, lam, lam / 2000)
    per_n = {}
    for n in sorted(set(int(n) for n in n_list)):
        seq = replace(cfg.sequence, n_pi=n)
        curve = analysis.noise_free_curve(nv, geo, seq, grid)
        width = analysis.fwhm_of_feature(curve, center)
        slope, where = analysis.max_response(nv, geo, n, sequence=seq)
        sigma_1s = noise.shot_noise_extrapolate(an.ranging_noise_sigma, an.ranging_noise_time, 1.0)
        acc = analysis.ranging_accuracy(sigma_1s, slope)
        per_n[str(n)] = {
            "fwhm_m": width,
            "max_didl_per_m": slope,
            "max_didl_distance_m": where,
            "rf_duration_s": pulses.rf_duration_for(seq, nv, geo),
            "accuracy_m_at_1s": acc,
            "phase_rad_per_rthz": float(analysis.phase_sensitivity(acc, lam)),
        }
    eta = float(analysis.field_sensitivity(an.field_noise_sigma, an.field_measurement_time, an.field_response))
    eta_full = float(analysis.full_collection_sensitivity(eta, nv.collection_factor))
    return {
        "contrast": nv.contrast,
        "wavelength_m": lam,
        "per_n": per_n,
        "field_sensitivity_t_per_rthz": eta,
        "field_sensitivity_full_collection_t_per_rthz": eta_full,
        "electric_sensitivity_v_per_m_per_rthz": float(analysis.electric_sensitivity(eta_full)),
        "optimal_rf_duration_s": analysis.optimal_rf_duration(
            cfg.sequence.init_duration + cfg.sequence.readout_duration, nv.decay_time),
    }


def cmd_metrics(cfg: InstrumentConfig, n_list) -> str:
    return format_json(metrics_report(cfg, n_list))


def cmd_track(cfg: InstrumentConfig, duration: float, sample_interval: float, n: int = 4,
              drift_rate: float = 0.0, noise_free: bool = False) -> tuple[str, str]:
    _require(n >= 1, "N must be >= 1")
    _require(duration > 0 and sample_interval > 0, "duration and sample_interval must be positive")
    seq = replace(cfg.sequence, n_pi=n)
    slope, where = analysis.max_response(cfg.nv, cfg.geometry, n, sequence=seq)
    geo = cfg.geometry.at_distance(where)
    trace = pulses.simulate_trace(cfg.nv, geo, seq, duration, sample_interval, cfg.seed,
                                  drift_rate=drift_rate, noise_free=noise_free)
    csv = format_csv(["time_s", "normalized_signal"], zip(trace.times, trace.samples))
    taus = noise.octave_taus(trace)
    table = [
        {"tau_s": t, "sigma": s, "sigma_distance_m": s / slope}
        for t, s in noise.allan_deviation(trace, taus)
    ]
    report = {"n_pi": n, "position_m": where, "response_per_m": slope,
              "sample_interval_s": sample_interval, "allan": table}
    return csv, format_json(report)


def cmd_ambiguity(cfg: InstrumentConfig, l_true: float, phase_noise: float = 0.0) -> str:
    _require(phase_noise >= 0, "phase_noise must be non-negative")
    w_plus, w_minus = physics.resonance_frequencies(cfg.nv)
    r_single = ambiguity.max_unambiguous_range_single(w_plus)
    r_dual = ambiguity.max_unambiguous_range_dual(w_plus, w_minus)
    if not 0 <= l_true < r_dual:
        raise AmbiguityError(f"L_true={l_true} m lies outside the unambiguous range [0, {r_dual:.6g}) m")
    rng = pulses.make_rng(cfg.seed)
    m = ambiguity.forward_phases(l_true, w_plus, w_minus, phase_noise, rng)
    res = ambiguity.resolve_ambiguity(m)
    return format_json({
        "phase_plus": m.phase_plus,
        "phase_minus": m.phase_minus,
        "L_hat": res.distance,
        "n": res.integer,
        "residual": res.residual,
        "rmax_single": r_single,
        "rmax_dual": r_dual,
    })


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON instrument configuration")
    common.add_argument("--seed", type=_seed, help="unsigned 64-bit RNG seed (overrides config)")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    p = argparse.ArgumentParser(prog="nvranging", description=__doc__.split("\n\n")[0].strip())
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("odmr", parents=[common], help="ODMR spectrum")
    s.add_argument("--f-min", "--f_min", dest="f_min", type=float, default=2.80e9)
    s.add_argument("--f-max", "--f_max", dest="f_max", type=float, default=2.94e9)
    s.add_argument("--points", type=int, default=281)

    s = sub.add_parser("rabi", parents=[common], help="Rabi oscillation")
    s.add_argument("--t-max", "--t_max", dest="t_max", type=float, default=2e-6)
    s.add_argument("--points", type=int, default=401)

    s = sub.add_parser("scan", parents=[common], help="distance scan")
    s.add_argument("--N", "-N", dest="n", type=int, default=1)
    s.add_argument("--L-center", "--L_center", dest="l_center", type=float)
    s.add_argument("--L-span", "--L_span", dest="l_span", type=float)
    s.add_argument("--points", type=int, default=201)
    s.add_argument("--repeats", type=int)
    s.add_argument("--noise-free", action="store_true")

    s = sub.add_parser("metrics", parents=[common], help="ranging metrics report")
    s.add_argument("--N-list", "--N_list", dest="n_list", type=_int_list, default=[1, 2, 3, 4, 5, 6])

    s = sub.add_parser("track", parents=[common], help="time trace and Allan deviation")
    s.add_argument("--duration", type=float, default=100.0)
    s.add_argument("--sample-interval", "--sample_interval", dest="sample_interval", type=float, default=0.01)
    s.add_argument("--N", "-N", dest="n", type=int, default=4)
    s.add_argument("--drift-rate", "--drift_rate", dest="drift_rate", type=float, default=0.0)
    s.add_argument("--noise-free", action="store_true")
    s.add_argument("--allan-out", metavar="PATH",
                   help="Allan JSON path (default: next to --out as *.allan.json)")

    s = sub.add_parser("ambiguity", parents=[common], help="dual-frequency ambiguity round trip")
    s.add_argument("--L-true", "--L_true", dest="l_true", type=float, default=1.234)
    s.add_argument("--phase-noise", "--phase_noise", dest="phase_noise", type=float, default=0.0)
    return p


def _load(args) -> InstrumentConfig:
    cfg = load_config(args.config) if args.config else InstrumentConfig()
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.out is not None:
        cfg = replace(cfg, out=args.out)
    return cfg


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        if args.command == "odmr":
            _emit(cmd_odmr(cfg, args.f_min, args.f_max, args.points), cfg.out)
        elif args.command == "rabi":
            _emit(cmd_rabi(cfg, args.t_max, args.points), cfg.out)
        elif args.command == "scan":
            _emit(cmd_scan(cfg, args.n, args.l_center, args.l_span, args.points,
                           args.repeats, args.noise_free), cfg.out)
        elif args.command == "metrics":
            _emit(cmd_metrics(cfg, args.n_list), cfg.out)
        elif args.command == "track":
            csv, report = cmd_track(cfg, args.duration, args.sample_interval, args.n,
                                    args.drift_rate, args.noise_free)
            _emit(csv, cfg.out)
            allan_path = args.allan_out
            if allan_path is None and cfg.out is not None:
                allan_path = str(Path(cfg.out).with_suffix(".allan.json"))
            if allan_path is not None:
                _emit(report, allan_path)
        elif args.command == "ambiguity":
            _emit(cmd_ambiguity(cfg, args.l_true, args.phase_noise), cfg.out)
    except (UsageError, ConfigError) as exc:
        print(f"nvranging: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AmbiguityError as exc:
        print(f"nvranging: ambiguity resolution failed: {exc}", file=sys.stderr)
        return EXIT_AMBIGUITY
    except DomainError as exc:
        print(f"nvranging: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
