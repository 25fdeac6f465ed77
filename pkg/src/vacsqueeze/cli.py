"""Command-line entry point.

Subcommands: ground-state, figure1, quench, spectrum-test, selftest.
Shared flags: --config PATH (YAML), --seed N (override), --out DIR,
--threads N. Exit codes: 0 success, 2 config error, 3 numerical failure.

Every command writes its fully resolved configuration next to its outputs;
re-running a command from that resolved config reproduces the CSV/JSON/SVG
outputs byte for byte (no wall clock or environment leaks into any file).
All numeric output uses shortest round-trip decimal formatting (Python
``repr``) in CSV and JSON, and ``%.6g`` inside SVG geometry.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

import yaml

from . import config as cfgmod
from . import svgplot
from .errors import ConfigError, VacsqueezeError
from .measurement import DetectorConfig
from .quench import adiabatic_reference, run_quench
from .rabi import RabiParams, effective_ground_energy, effective_ground_state, exact_ground_field_state, squeezing_parameter, sw_validity
from .spectrum import (
    ComparisonConfig,
    ModeSpectrum,
    flat_spectrum,
    gaussian_bump_spectrum,
    power_law_spectrum,
    run_spectrum_test,
    spectrum_from_table,
)
from .squeezed import (
    SqueezeParameter,
    photon_number,
    quadrature_variances,
    rotate_and_report,
    squeezed_vacuum,
    variance_curves,
)


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_json(path: Path, obj) -> None:
    _atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_csv(path: Path, header: list[str], rows) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    os.replace(tmp, path)


def _rabi_from(cfg: dict) -> RabiParams:
    block = cfg["rabi"]
    return RabiParams(omega=block["omega"], Omega=block["Omega"], g=block["g"])


def cmd_ground_state(cfg: dict, out: Path) -> None:
    params = _rabi_from(cfg)
    tail_tol = cfg["truncation"]["tail_tol"]
    max_dim = cfg["truncation"]["max_dim"]
    xi = squeezing_parameter(params)
    sw = sw_validity(params)
    rho, report = exact_ground_field_state(params, tail_tol=tail_tol, max_dim=max_dim)
    eff_energy_num, eff_state = effective_ground_state(params, tail_tol=tail_tol)
    target = squeezed_vacuum(xi, dim=eff_state.dim)
    fid_eff = eff_state.fidelity(target)

    payload = {
        "params": {
            "omega": params.omega,
            "Omega": params.Omega,
            "g": params.g,
            "g_c": params.g_c,
            "coupling_ratio": params.coupling_ratio,
        },
        "squeezing": {"r": xi.r, "theta": xi.theta, "xi": -xi.r},
        "n_mean_predicted": photon_number(xi),
        "n_mean_exact": report.n_mean,
        "sw_validity": {"valid": sw.valid, "margin": sw.margin, "lhs": sw.lhs, "rhs": sw.rhs},
        "fidelity_exact_vs_squeezed": report.fidelity,
        "fidelity_effective_vs_squeezed": fid_eff,
        "ground_energy_exact": report.ground_energy,
        "effective_ground_energy_numeric": eff_energy_num,
        "effective_ground_energy_closed_form": effective_ground_energy(params),
        "purity_exact_reduced": report.purity,
        "joint_parity": report.joint_parity,
        "dim": report.dim,
    }
    _write_json(out / "report.json", payload)

    rows = [
        ["omega", repr(params.omega)],
        ["Omega", repr(params.Omega)],
        ["g", repr(params.g)],
        ["g_c", repr(params.g_c)],
        ["xi", repr(-xi.r)],
        ["r", repr(xi.r)],
        ["n_mean_predicted", repr(photon_number(xi))],
        ["n_mean_exact", repr(report.n_mean)],
        ["sw_valid", str(sw.valid).lower()],
        ["sw_margin", repr(sw.margin)],
        ["fidelity_exact_vs_squeezed", repr(report.fidelity)],
        ["fidelity_effective_vs_squeezed", repr(fid_eff)],
    ]
    _write_csv(out / "report.csv", ["metric", "value"], rows)


def cmd_figure1(cfg: dict, out: Path) -> None:
    xi = SqueezeParameter(r=cfg["squeeze"]["r"])
    omega = cfg["omega"]
    period = 2.0 * np.pi / omega
    times = cfg["times"]
    if times is None:
        times = [0.0, period / 8.0, period / 4.0]
    times = [float(t) for t in times]

    snapshots = rotate_and_report(
        xi,
        omega,
        times,
        resolution=int(cfg["grid"]["resolution"]),
        widths=float(cfg["grid"]["widths"]),
    )
    for idx, snap in enumerate(snapshots):
        svg = svgplot.heatmap_svg(
            snap.husimi.values, title=f"Husimi Q at omega*t = {snap.t * omega:.4g}"
        )
        _atomic_write_text(out / f"husimi_{idx:02d}.svg", svg)

    trace_count = int(cfg["trace"]["count"])
    trace_times = np.linspace(0.0, period, trace_count)
    numeric = rotate_and_report(xi, omega, trace_times, with_husimi=False)
    ana_x, ana_p = variance_curves(xi, omega, trace_times)
    rows = []
    for snap, ax, ap in zip(numeric, ana_x, ana_p):
        rows.append(
            [
                repr(snap.t),
                repr(snap.variances.var_x),
                repr(snap.variances.var_p),
                repr(float(ax)),
                repr(float(ap)),
            ]
        )
    _write_csv(
        out / "variances.csv",
        ["t", "var_x", "var_p", "analytic_var_x", "analytic_var_p"],
        rows,
    )
    svg = svgplot.line_plot_svg(
        trace_times,
        {
            "var X (numeric)": np.array([s.variances.var_x for s in numeric]),
            "var P (numeric)": np.array([s.variances.var_p for s in numeric]),
            "var X (closed form)": ana_x,
            "var P (closed form)": ana_p,
        },
        title=f"Rotating squeezed vacuum, r = {xi.r:.4g}",
        x_label="t",
        y_label="quadrature variance",
    )
    _atomic_write_text(out / "variances.svg", svg)


def cmd_quench(cfg: dict, out: Path) -> None:
    params = _rabi_from(cfg)
    tspec = cfg["times"]
    stop = tspec["stop"]
    if stop is None:
        stop = 2.0 * (2.0 * np.pi / params.omega)
    times = np.linspace(float(tspec["start"]), float(stop), int(tspec["count"]))
    result = run_quench(params, times, source=cfg["source"])
    result.to_csv(out / "quench_trace.csv")

    xi = squeezing_parameter(params)
    summary = {
        "source": cfg["source"],
        "pre_quench_n": result.pre_quench_n,
        "post_quench_n_mean": float(np.mean(result.n_trace)),
        "post_quench_n_spread": float(result.n_trace.max() - result.n_trace.min()),
        "sudden_yield_predicted": photon_number(xi),
        "purity": result.purity,
    }
    adiabatic = cfg.get("adiabatic")
    if adiabatic is not None:
        final_n = adiabatic_reference(
            params, float(adiabatic["ramp_duration"]), int(adiabatic["steps"])
        )
        summary["adiabatic"] = {
            "ramp_duration": float(adiabatic["ramp_duration"]),
            "steps": int(adiabatic["steps"]),
            "final_n": final_n,
            "relative_to_sudden": final_n / photon_number(xi) if xi.r > 0 else 0.0,
        }
    _write_json(out / "quench_summary.json", summary)


def _profile_to_spectrum(profile: dict, frequencies: np.ndarray) -> ModeSpectrum:
    kind = profile["kind"]
    if kind == "flat":
        return flat_spectrum(frequencies, profile["r"])
    if kind == "gaussian-bump":
        return gaussian_bump_spectrum(
            frequencies,
            r_max=profile["r_max"],
            center=profile["center"],
            width=profile["width"],
            floor=profile.get("floor", 0.0),
        )
    if kind == "power-law":
        return power_law_spectrum(
            frequencies,
            r_ref=profile["r_ref"],
            exponent=profile["exponent"],
            reference_frequency=profile.get("reference_frequency"),
        )
    if kind == "user-table":
        return spectrum_from_table(profile["path"])
    raise ConfigError(f"unknown profile kind {kind!r}")


def cmd_spectrum_test(cfg: dict, out: Path, threads: int) -> None:
    modes = cfg["modes"]
    frequencies = np.linspace(float(modes["min"]), float(modes["max"]), int(modes["count"]))
    spectrum = _profile_to_spectrum(cfg["profile"], frequencies)
    counts_spectrum = None
    if cfg.get("counts_profile") is not None:
        counts_spectrum = _profile_to_spectrum(cfg["counts_profile"], spectrum.frequencies)
    det_cfg = cfg["detector"]
    detector = DetectorConfig(
        shots=int(det_cfg["shots"]),
        efficiency=float(det_cfg["efficiency"]),
        dark_rate=float(det_cfg["dark_rate"]),
        extra_noise_variance=float(det_cfg["extra_noise_variance"]),
    )
    thr = cfg["thresholds"]
    comparison_config = ComparisonConfig(
        correlation_threshold=float(thr["correlation"]),
        p_threshold=float(thr["p_value"]),
        power_sigma=float(thr["power_sigma"]),
        min_modes=int(thr["min_modes"]),
        dark_mode=cfg["dark_subtraction"]["mode"],
        reference_modes=tuple(cfg["dark_subtraction"]["reference_modes"]),
    )
    comparison, count_summary, fluct_summary = run_spectrum_test(
        spectrum,
        detector,
        seed=cfg["seed"],
        n_bins=int(cfg["homodyne_bins"]),
        config=comparison_config,
        counts_spectrum=counts_spectrum,
        threads=threads,
    )
    payload = comparison.to_dict()
    payload["seed"] = cfg["seed"]
    payload["profile"] = cfg["profile"]
    _write_json(out / "comparison.json", payload)
    _atomic_write_text(out / "summary.txt", comparison.summary_text() + "\n")
    svg = svgplot.spectrum_panels_svg(
        comparison.frequencies,
        comparison.excess_counts,
        comparison.predicted_counts,
        comparison.amplitudes,
        verdict=comparison.verdict,
    )
    _atomic_write_text(out / "spectrum.svg", svg)
    rows = [
        [
            repr(float(f)),
            repr(float(r)),
            repr(float(e)),
            repr(float(p)),
            repr(float(a)),
            repr(float(s)),
            str(bool(c)).lower(),
        ]
        for f, r, e, p, a, s, c in zip(
            comparison.frequencies,
            spectrum.r_values,
            comparison.excess_counts,
            comparison.predicted_counts,
            comparison.amplitudes,
            comparison.standard_errors,
            comparison.clamped,
        )
    ]
    _write_csv(
        out / "per_mode.csv",
        ["frequency", "r_true", "excess_counts", "predicted_counts", "amplitude", "standard_error", "clamped"],
        rows,
    )


def cmd_selftest(cfg: dict) -> int:
    """Fast internal consistency checks; one pass/fail line per check."""
    import vacsqueeze as vs

    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"selftest {name}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            failures += 1

    xi = SqueezeParameter(r=0.1115717756571049)
    state = squeezed_vacuum(xi)
    check("photon-number identity", abs(state.number_mean() - 0.0125) < 1e-9)

    times = np.linspace(0.0, 2 * np.pi, 32)
    snaps = rotate_and_report(xi, 1.0, times, with_husimi=False)
    ana_x, _ = variance_curves(xi, 1.0, times)
    err = max(abs(s.variances.var_x - a) for s, a in zip(snaps, ana_x))
    check("variance dynamics vs closed form", err < 1e-8)

    det = DetectorConfig(shots=20000)
    rec1 = vs.simulate_photon_counts(xi, det, seed=cfg["seed"])
    rec2 = vs.simulate_photon_counts(xi, det, seed=cfg["seed"])
    check("record determinism", np.array_equal(rec1.samples, rec2.samples))

    hom = vs.simulate_homodyne(
        xi, 1.0, 2 * np.pi * np.arange(16) / 16, DetectorConfig(shots=20000), seed=cfg["seed"]
    )
    amp = vs.estimate_fluctuation_amplitude(hom)
    r_hat, _clamped = vs.xi_from_amplitude(amp)
    check("estimator round trip (10%)", abs(r_hat - xi.r) < 0.1 * xi.r)

    return 3 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vacsqueeze",
        description="Squeezed electromagnetic vacua: ground states, dynamics, detector Monte Carlo "
        "and the photon-count vs field-fluctuation spectrum test.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("ground-state", "exact vs effective ground-state comparison report"),
        ("figure1", "Husimi panels and quadrature-variance traces of the rotating vacuum"),
        ("quench", "instantaneous coupling turn-off traces and adiabatic reference"),
        ("spectrum-test", "multimode photon-count vs fluctuation-spectrum verdict"),
        ("selftest", "fast internal consistency checks"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", type=Path, default=None, help="YAML config file")
        sp.add_argument("--seed", type=int, default=None, help="override the config seed")
        sp.add_argument("--out", type=Path, default=None, help="output directory (default runs/<command>)")
        sp.add_argument("--threads", type=int, default=1, help="worker threads for per-mode generation")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        file_cfg = cfgmod.load_yaml(args.config) if args.config else {}
        cfg = cfgmod.resolve(args.command, file_cfg, seed_override=args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.command == "selftest":
        return cmd_selftest(cfg)

    out = args.out if args.out is not None else Path("runs") / args.command
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"config error: cannot create output directory {out}: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "ground-state":
            cmd_ground_state(cfg, out)
        elif args.command == "figure1":
            cmd_figure1(cfg, out)
        elif args.command == "quench":
            cmd_quench(cfg, out)
        elif args.command == "spectrum-test":
            cmd_spectrum_test(cfg, out, threads=max(1, args.threads))
    except VacsqueezeError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    _atomic_write_text(
        out / "resolved_config.yaml",
        yaml.safe_dump(cfg, sort_keys=True, default_flow_style=False),
    )
    print(f"wrote outputs to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
