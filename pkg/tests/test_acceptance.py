"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines. Tolerances are pinned here, not calibrated elsewhere.
"""

import time

import numpy as np
import pytest

from vacsqueeze import (
    ComparisonConfig,
    DetectorConfig,
    RabiParams,
    SqueezeParameter,
    adiabatic_reference,
    compare_spectra,
    estimate_fluctuation_amplitude,
    estimate_two_time_matrix,
    exact_ground_field_state,
    fit_two_time_components,
    flat_spectrum,
    gaussian_bump_spectrum,
    photon_number,
    quadrature_variances,
    rotate_and_report,
    run_quench,
    run_spectrum_test,
    simulate_homodyne,
    simulate_photon_counts,
    squeezed_vacuum,
    squeezed_vacuum_fock_series,
    squeezing_parameter,
    symmetrized_two_time_correlation,
    two_time_matrix_from_state,
    variance_curves,
    weak_squeezing_approx,
    xi_from_amplitude,
)


def report(criterion, detail):
    print(f"ACCEPTANCE {criterion}: PASS  ({detail})")


def test_criterion_1_sw_correspondence():
    """Reduced exact Rabi ground state matches the derived squeezed vacuum."""
    start = time.perf_counter()
    params = RabiParams(omega=1.0, Omega=100.0, g=3.0)
    xi = squeezing_parameter(params)
    assert -xi.r == pytest.approx(-0.0235777, abs=1e-7)
    _, rep = exact_ground_field_state(params)
    elapsed = time.perf_counter() - start
    assert rep.fidelity >= 0.999
    assert elapsed < 10.0
    report(1, f"fidelity={rep.fidelity:.6f}, runtime={elapsed:.2f}s")


def test_criterion_2_photon_number_identity():
    """<a†a> = sinh^2 r for numerically constructed squeezed vacua."""
    for r in (0.0235777, 0.1115718, 0.5, 1.0):
        state = squeezed_vacuum(SqueezeParameter(r=r))
        assert abs(state.number_mean() - np.sinh(r) ** 2) < 1e-8
    xi6 = squeezing_parameter(RabiParams(1.0, 100.0, 6.0))
    assert np.exp(2 * xi6.r) == pytest.approx(1.25, abs=1e-12)
    n6 = squeezed_vacuum(xi6).number_mean()
    assert abs(n6 - 0.0125) < 1e-9
    report(2, f"g/g_c=0.6 gives <n>={n6:.12f}")


def test_criterion_3_variance_dynamics():
    """Evolved variances match the closed form; period pi/w; recurrence at 2pi/w."""
    xi = SqueezeParameter(r=0.1115717756571049)
    omega = 1.0
    times = np.linspace(0.0, 2 * np.pi / omega, 64)
    snaps = rotate_and_report(xi, omega, times, with_husimi=False)
    ana_x, ana_p = variance_curves(xi, omega, times)
    err_x = max(abs(s.variances.var_x - a) for s, a in zip(snaps, ana_x))
    err_p = max(abs(s.variances.var_p - a) for s, a in zip(snaps, ana_p))
    assert max(err_x, err_p) < 1e-8

    base = np.linspace(0.0, np.pi / omega, 32, endpoint=False)
    first = rotate_and_report(xi, omega, base, with_husimi=False)
    second = rotate_and_report(xi, omega, base + np.pi / omega, with_husimi=False)
    period_err = max(abs(a.variances.var_x - b.variances.var_x) for a, b in zip(first, second))
    assert period_err < 1e-8

    recur = rotate_and_report(xi, omega, [0.0, 2 * np.pi / omega], with_husimi=False)
    fid = recur[0].state.fidelity(recur[1].state)
    assert fid >= 1 - 1e-9
    report(3, f"max closed-form error={max(err_x, err_p):.2e}, recurrence fidelity={fid:.12f}")


def test_criterion_4_construction_cross_validation():
    """Operator exponential vs number-basis series vs two-term approximation."""
    worst = 1.0
    for r in (0.0235777, 0.1115718, 0.3, 0.5, 0.75, 1.0):
        xi = SqueezeParameter(r=r)
        op_state = squeezed_vacuum(xi)
        series = squeezed_vacuum_fock_series(xi, dim=op_state.dim)
        fid = op_state.fidelity(series)
        worst = min(worst, fid)
        assert fid >= 1 - 1e-10
    for r in (0.05, 0.1115718, 0.2, 0.3):
        xi = SqueezeParameter(r=r)
        infid = 1 - weak_squeezing_approx(xi).fidelity(squeezed_vacuum(xi, dim=64))
        assert infid < 0.4 * np.tanh(r) ** 4
    report(4, f"worst operator/series fidelity={worst:.14f}")


def test_criterion_5_uncertainty_floor():
    """Var X · Var P >= 1/4 everywhere; equality at quarter-period multiples."""
    rng = np.random.default_rng(20250809)
    rs = rng.uniform(0.0, 1.0, 1000)
    ts = rng.uniform(0.0, 4 * np.pi, 1000)
    products = []
    for r, t in zip(rs, ts):
        v = quadrature_variances(SqueezeParameter(float(r)), 1.0, float(t))
        products.append(v.uncertainty_product)
        assert v.uncertainty_product >= 0.25 - 1e-12
    for r in (0.1, 0.5, 1.0):
        for k in range(4):
            v = quadrature_variances(SqueezeParameter(r), 1.0, k * np.pi / 2)
            assert abs(v.uncertainty_product - 0.25) < 1e-9
    report(5, f"min product={min(products):.12f} over 1000 samples")


def test_criterion_6_quench_conservation():
    """Sudden quench conserves <n> = sinh^2 xi; slow ramp de-excites below 10%."""
    params = RabiParams(1.0, 100.0, 6.0)
    xi = squeezing_parameter(params)
    times = np.linspace(0.0, 4 * np.pi, 100)
    result = run_quench(params, times, source="effective")
    spread = result.n_trace.max() - result.n_trace.min()
    assert spread < 1e-10
    assert np.all(np.abs(result.n_trace - np.sinh(xi.r) ** 2) < 1e-8)

    final_n = adiabatic_reference(params, ramp_duration=1000.0 / params.omega, steps=10_000)
    sudden = photon_number(xi)
    assert final_n < 0.1 * sudden
    report(6, f"post-quench spread={spread:.2e}, adiabatic/sudden={final_n / sudden:.2e}")


def test_criterion_7_estimator_round_trip():
    """Homodyne r-estimate within 5%; photon-count mean within 3 standard errors."""
    true_r = 0.3
    det = DetectorConfig(shots=100_000)
    times = 2 * np.pi * np.arange(16) / 16
    rec = simulate_homodyne(SqueezeParameter(true_r), 1.0, times, det, seed=20250809)
    r_hat, _ = xi_from_amplitude(estimate_fluctuation_amplitude(rec))
    assert r_hat == pytest.approx(true_r, rel=0.05)

    xi = SqueezeParameter(r=0.1115717756571049)
    counts = simulate_photon_counts(xi, DetectorConfig(shots=1_000_000), seed=20250809)
    se = counts.samples.std(ddof=1) / np.sqrt(counts.samples.size)
    dev = abs(counts.samples.mean() - 0.0125)
    assert dev < 3 * se
    report(7, f"r_hat={r_hat:.4f} (true 0.3), count-mean deviation={dev / se:.2f} se")


def test_criterion_8_spectrum_verdicts():
    """Matched bump CONSISTENT; scrambled INCONSISTENT; null false-positive rate <= 5%."""
    start = time.perf_counter()
    freqs = np.linspace(0.5, 2.0, 32)
    bump = gaussian_bump_spectrum(freqs, r_max=0.3, center=1.2, width=0.35)
    det = DetectorConfig(shots=100_000, dark_rate=0.001)

    matched, counts, fluct = run_spectrum_test(bump, det, seed=20250809)
    assert matched.verdict == "CONSISTENT"
    assert matched.correlation >= 0.9

    scrambled, _, _ = run_spectrum_test(
        bump, det, seed=20250809, counts_spectrum=flat_spectrum(freqs, 0.0)
    )
    assert scrambled.verdict == "INCONSISTENT"
    assert scrambled.correlation <= 0.2

    null_spectrum = flat_spectrum(np.linspace(0.5, 2.0, 16), 0.0)
    null_det = DetectorConfig(shots=2000, dark_rate=0.001)
    false_positive = 0
    for seed in range(100):
        verdict, _, _ = run_spectrum_test(null_spectrum, null_det, seed=1000 + seed)
        if verdict.verdict == "CONSISTENT":
            false_positive += 1
    assert false_positive <= 5

    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    report(
        8,
        f"matched rho={matched.correlation:.3f} p={matched.p_value:.3f}, "
        f"scrambled rho={scrambled.correlation:.3f}, "
        f"false-CONSISTENT {false_positive}/100, runtime={elapsed:.1f}s",
    )


def test_criterion_9_nonstationary_signature():
    """cos w(t1+t2) amplitude = sinh(2r)/2; vanishes for the vacuum."""
    r = 0.5
    xi = SqueezeParameter(r=r)
    omega = 1.0
    times = np.linspace(0.0, 2 * np.pi, 12)
    expected = np.sinh(2 * r) / 2

    state = squeezed_vacuum(xi)
    analytic = two_time_matrix_from_state(state, omega, times)
    fit = fit_two_time_components(times, analytic, omega)
    assert fit["nonstationary_amplitude"] == pytest.approx(expected, rel=0.05)
    assert fit["nonstationary_amplitude"] == pytest.approx(expected, abs=1e-8)

    mc = estimate_two_time_matrix(xi, omega, times, shots=40_000, seed=20250809)
    fit_mc = fit_two_time_components(times, mc, omega)
    assert fit_mc["nonstationary_amplitude"] == pytest.approx(expected, rel=0.05)

    vac = estimate_two_time_matrix(SqueezeParameter(0.0), omega, times, shots=40_000, seed=7)
    fit_vac = fit_two_time_components(times, vac, omega)
    noise_floor = 3.0 / np.sqrt(40_000)
    assert fit_vac["nonstationary_amplitude"] < noise_floor
    closed_vac = symmetrized_two_time_correlation(
        SqueezeParameter(0.0), omega, times[:, None], times[None, :]
    )
    assert fit_two_time_components(times, closed_vac, omega)["nonstationary_amplitude"] < 1e-12
    report(
        9,
        f"analytic amp={fit['nonstationary_amplitude']:.6f}, "
        f"MC amp={fit_mc['nonstationary_amplitude']:.6f} (target {expected:.6f})",
    )
