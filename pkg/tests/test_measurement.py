import json

import numpy as np
import pytest

from vacsqueeze import (
    DetectorConfig,
    SqueezeParameter,
    estimate_fluctuation_amplitude,
    estimate_two_time_matrix,
    fluctuation_amplitude,
    simulate_homodyne,
    simulate_photon_counts,
    simulate_quadrature_pairs,
    symmetrized_two_time_correlation,
    variance_curves,
    xi_from_amplitude,
)
from vacsqueeze.errors import ResolutionError

R_REFERENCE = 0.1115717756571049


def period_times(omega, bins=16):
    return (2 * np.pi / omega) * np.arange(bins) / bins


class TestDetectorConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            DetectorConfig(shots=0)
        with pytest.raises(ValueError):
            DetectorConfig(shots=10, efficiency=1.2)
        with pytest.raises(ValueError):
            DetectorConfig(shots=10, dark_rate=-0.1)


class TestPhotonCounts:
    def test_determinism(self):
        xi = SqueezeParameter(0.3)
        det = DetectorConfig(shots=5000, efficiency=0.8, dark_rate=0.01)
        a = simulate_photon_counts(xi, det, seed=99)
        b = simulate_photon_counts(xi, det, seed=99)
        assert np.array_equal(a.samples, b.samples)

    def test_mode_streams_independent(self):
        xi = SqueezeParameter(0.3)
        det = DetectorConfig(shots=5000)
        a = simulate_photon_counts(xi, det, seed=99, mode_index=0)
        b = simulate_photon_counts(xi, det, seed=99, mode_index=1)
        assert not np.array_equal(a.samples, b.samples)

    def test_vacuum_dark_free_silent(self):
        rec = simulate_photon_counts(SqueezeParameter(0.0), DetectorConfig(shots=2000), seed=1)
        assert np.all(rec.samples == 0)

    def test_even_support(self):
        rec = simulate_photon_counts(SqueezeParameter(0.6), DetectorConfig(shots=20000), seed=2)
        assert np.all(rec.samples % 2 == 0)

    def test_mean_matches_identity(self):
        xi = SqueezeParameter(R_REFERENCE)
        det = DetectorConfig(shots=200_000)
        rec = simulate_photon_counts(xi, det, seed=7)
        se = rec.samples.std(ddof=1) / np.sqrt(det.shots)
        assert abs(rec.samples.mean() - 0.0125) < 3 * se

    def test_dark_counts_only(self):
        det = DetectorConfig(shots=500_000, dark_rate=0.001)
        rec = simulate_photon_counts(SqueezeParameter(0.0), det, seed=3)
        se = np.sqrt(0.001 / det.shots)
        assert abs(rec.samples.mean() - 0.001) < 3 * se

    def test_efficiency_halves_mean(self):
        xi = SqueezeParameter(0.4)
        full = simulate_photon_counts(xi, DetectorConfig(shots=300_000), seed=5)
        half = simulate_photon_counts(xi, DetectorConfig(shots=300_000, efficiency=0.5), seed=6)
        se = full.samples.std(ddof=1) / np.sqrt(300_000)
        assert abs(half.samples.mean() - 0.5 * full.samples.mean()) < 3 * se


class TestHomodyne:
    def test_determinism_and_shape(self):
        xi = SqueezeParameter(0.2)
        times = period_times(1.0)
        det = DetectorConfig(shots=400)
        a = simulate_homodyne(xi, 1.0, times, det, seed=42)
        b = simulate_homodyne(xi, 1.0, times, det, seed=42)
        assert np.array_equal(a.samples, b.samples)
        assert a.samples.shape == (16, 400)

    def test_vacuum_pooled_variance(self):
        det = DetectorConfig(shots=100_000)
        rec = simulate_homodyne(SqueezeParameter(0.0), 1.0, [0.0], det, seed=8)
        s2 = rec.samples.var(ddof=1)
        se = 0.5 * np.sqrt(2.0 / det.shots)
        assert abs(s2 - 0.5) < 3 * se

    def test_reference_variances_at_special_phases(self):
        xi = SqueezeParameter(R_REFERENCE)
        det = DetectorConfig(shots=200_000)
        rec = simulate_homodyne(xi, 1.0, [0.0, np.pi / 2], det, seed=9)
        s2 = rec.samples.var(axis=1, ddof=1)
        se0 = 0.625 * np.sqrt(2.0 / det.shots)
        se1 = 0.4 * np.sqrt(2.0 / det.shots)
        assert abs(s2[0] - 0.625) < 3 * se0  # anti-squeezed X at t=0
        assert abs(s2[1] - 0.4) < 3 * se1

    def test_time_averaged_variance(self):
        xi = SqueezeParameter(R_REFERENCE)
        det = DetectorConfig(shots=50_000)
        rec = simulate_homodyne(xi, 1.0, period_times(1.0), det, seed=10)
        pooled = rec.samples.var(ddof=1)
        # uniform bins over the period average cos^2 to 1/2 exactly
        expected = (np.exp(2 * xi.r) + np.exp(-2 * xi.r)) / 4.0
        assert expected == pytest.approx(0.5125, abs=1e-10)
        assert abs(pooled - expected) < 0.005

    def test_electronic_noise_knob(self):
        det = DetectorConfig(shots=100_000, extra_noise_variance=0.25)
        rec = simulate_homodyne(SqueezeParameter(0.0), 1.0, [0.0], det, seed=11)
        assert abs(rec.samples.var(ddof=1) - 0.75) < 0.01


class TestAmplitudeEstimation:
    def test_noiseless_curve(self):
        xi = SqueezeParameter(0.3)
        var_x, _ = variance_curves(xi, 1.0, period_times(1.0, 64))
        assert fluctuation_amplitude(var_x) == pytest.approx(0.5 * np.exp(0.6), abs=1e-12)

    def test_vacuum_record(self):
        det = DetectorConfig(shots=100_000)
        rec = simulate_homodyne(SqueezeParameter(0.0), 1.0, period_times(1.0), det, seed=12)
        assert estimate_fluctuation_amplitude(rec) == pytest.approx(0.5, rel=0.02)

    def test_reference_record(self):
        det = DetectorConfig(shots=100_000)
        rec = simulate_homodyne(SqueezeParameter(R_REFERENCE), 1.0, period_times(1.0), det, seed=13)
        assert estimate_fluctuation_amplitude(rec) == pytest.approx(0.625, rel=0.02)

    def test_needs_enough_bins(self):
        det = DetectorConfig(shots=100)
        rec = simulate_homodyne(SqueezeParameter(0.1), 1.0, period_times(1.0, 8), det, seed=14)
        with pytest.raises(ResolutionError):
            estimate_fluctuation_amplitude(rec)

    def test_needs_full_period(self):
        det = DetectorConfig(shots=100)
        times = np.linspace(0.0, 2.0, 20)  # one period is 2*pi at omega=1
        rec = simulate_homodyne(SqueezeParameter(0.1), 1.0, times, det, seed=15)
        with pytest.raises(ResolutionError):
            estimate_fluctuation_amplitude(rec)

    def test_photon_record_rejected(self):
        rec = simulate_photon_counts(SqueezeParameter(0.1), DetectorConfig(shots=10), seed=16)
        with pytest.raises(ValueError):
            estimate_fluctuation_amplitude(rec)


class TestXiFromAmplitude:
    def test_vacuum_floor(self):
        r, clamped = xi_from_amplitude(0.5)
        assert r == 0.0 and not clamped

    def test_reference_inverse(self):
        r, clamped = xi_from_amplitude(0.625)
        assert r == pytest.approx(R_REFERENCE, abs=1e-12)
        assert not clamped

    def test_clamping_flagged(self):
        r, clamped = xi_from_amplitude(0.45)
        assert r == 0.0 and clamped

    def test_array_form(self):
        r, clamped = xi_from_amplitude(np.array([0.4, 0.5, 0.625]))
        assert np.array_equal(clamped, [True, False, False])
        assert r[2] == pytest.approx(R_REFERENCE, abs=1e-12)

    def test_round_trip(self):
        # simulate -> amplitude -> r within 5%
        true_r = 0.3
        det = DetectorConfig(shots=30_000)
        rec = simulate_homodyne(SqueezeParameter(true_r), 1.0, period_times(1.0), det, seed=17)
        r_hat, _ = xi_from_amplitude(estimate_fluctuation_amplitude(rec))
        assert r_hat == pytest.approx(true_r, rel=0.05)

    def test_estimator_consistency(self):
        # RMS error decreases with the shot budget
        true_r = 0.2
        rms = []
        for shots in (1000, 10_000, 100_000):
            errs = []
            for sub in range(6):
                det = DetectorConfig(shots=shots)
                rec = simulate_homodyne(
                    SqueezeParameter(true_r), 1.0, period_times(1.0), det, seed=500 + sub
                )
                r_hat, _ = xi_from_amplitude(estimate_fluctuation_amplitude(rec))
                errs.append(r_hat - true_r)
            rms.append(float(np.sqrt(np.mean(np.square(errs)))))
        assert rms[0] > rms[1] > rms[2]


class TestTwoTimePairs:
    def test_pair_covariance(self):
        xi = SqueezeParameter(0.5)
        t1, t2 = 0.4, 1.3
        pairs = simulate_quadrature_pairs(xi, 1.0, t1, t2, shots=200_000, seed=18)
        c12 = np.mean(pairs[:, 0] * pairs[:, 1])
        expected = symmetrized_two_time_correlation(xi, 1.0, t1, t2)
        c11 = symmetrized_two_time_correlation(xi, 1.0, t1, t1)
        c22 = symmetrized_two_time_correlation(xi, 1.0, t2, t2)
        se = np.sqrt((c11 * c22 + expected**2) / 200_000)
        assert abs(c12 - expected) < 3 * se

    def test_matrix_estimate(self):
        xi = SqueezeParameter(0.5)
        times = np.linspace(0.0, 2 * np.pi, 6)
        est = estimate_two_time_matrix(xi, 1.0, times, shots=50_000, seed=19)
        closed = symmetrized_two_time_correlation(xi, 1.0, times[:, None], times[None, :])
        assert np.max(np.abs(est - closed)) < 0.05
        assert np.max(np.abs(est - est.T)) == 0.0


class TestRecordSerialization:
    def test_photon_record_save(self, tmp_path):
        rec = simulate_photon_counts(
            SqueezeParameter(0.3), DetectorConfig(shots=50, dark_rate=0.01), seed=20, mode_index=4,
            mode_frequency=1.7,
        )
        csv_path, json_path = tmp_path / "r.csv", tmp_path / "r.json"
        rec.save(csv_path, json_path)
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "shot,count"
        assert len(lines) == 51
        meta = json.loads(json_path.read_text())
        assert meta["seed"] == 20
        assert meta["spawn_key"] == [4, 0]
        assert meta["detector"]["shots"] == 50
        assert meta["mode_frequency"] == 1.7

    def test_homodyne_record_save(self, tmp_path):
        rec = simulate_homodyne(
            SqueezeParameter(0.1), 2.0, period_times(2.0, 16)[:16], DetectorConfig(shots=3), seed=21
        )
        csv_path, json_path = tmp_path / "h.csv", tmp_path / "h.json"
        rec.save(csv_path, json_path)
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "time_index,shot,value"
        assert len(lines) == 1 + 16 * 3
        meta = json.loads(json_path.read_text())
        assert len(meta["times"]) == 16
