"""Monte-Carlo detector models and squeezing estimators.

Photon counting (finite efficiency + Poisson dark counts), homodyne
quadrature sampling of the rotating squeezed vacuum, correlated two-time
quadrature pairs, and the estimator chain that recovers the squeezing
magnitude from a homodyne record.

Randomness contract
-------------------
All draws come from counter-based Philox generators seeded through
``numpy.random.SeedSequence(master_seed, spawn_key=(mode_index, channel))``
with channel 0 = photon counts, 1 = homodyne, 2 = two-time pairs. Within a
record every sample is produced by a fixed sequence of vectorized draws, so
the shot index is the position in that stream: identical seeds give
bit-identical records regardless of how callers schedule the work, and
distinct modes use provably independent streams. Each shot is an independent
preparation of the mode; mapping shot-based counting onto rate-based (counts
per unit time) detection requires an assumed preparation rate, which is left
to the caller.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ResolutionError
from .squeezed import (
    SqueezeParameter,
    even_photon_populations,
    symmetrized_two_time_correlation,
    variance_curves,
)

POPULATION_TAIL_CUTOFF = 1e-12


@dataclass(frozen=True)
class DetectorConfig:
    """Detector model: thinning efficiency, additive dark counts, shot count.

    ``extra_noise_variance`` is a single additive homodyne variance knob for
    electronic noise (default 0: pure quantum Gaussian statistics).
    """

    shots: int
    efficiency: float = 1.0
    dark_rate: float = 0.0
    extra_noise_variance: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError(f"efficiency must be in [0, 1], got {self.efficiency}")
        if self.dark_rate < 0:
            raise ValueError(f"dark rate must be >= 0, got {self.dark_rate}")
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if self.extra_noise_variance < 0:
            raise ValueError("extra noise variance must be >= 0")


@dataclass(frozen=True)
class MeasurementRecord:
    """Seeded Monte-Carlo output of one detector run on one mode."""

    kind: str  # "photon-count" | "homodyne" | "two-time"
    mode_frequency: float
    samples: np.ndarray = field(repr=False)
    seed: int
    spawn_key: tuple
    detector: DetectorConfig
    times: np.ndarray | None = None

    def sidecar(self) -> dict:
        """JSON-serializable metadata describing how to regenerate the record."""
        meta = {
            "kind": self.kind,
            "mode_frequency": self.mode_frequency,
            "seed": self.seed,
            "spawn_key": list(self.spawn_key),
            "detector": {
                "shots": self.detector.shots,
                "efficiency": self.detector.efficiency,
                "dark_rate": self.detector.dark_rate,
                "extra_noise_variance": self.detector.extra_noise_variance,
            },
        }
        if self.times is not None:
            meta["times"] = [float(t) for t in self.times]
        return meta

    def save(self, csv_path, json_path) -> None:
        """One CSV row per sample, plus a JSON sidecar with config and seed."""
        with open(csv_path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            if self.kind == "photon-count":
                writer.writerow(["shot", "count"])
                for i, c in enumerate(self.samples):
                    writer.writerow([i, int(c)])
            else:
                writer.writerow(["time_index", "shot", "value"])
                for ti in range(self.samples.shape[0]):
                    for si in range(self.samples.shape[1]):
                        writer.writerow([ti, si, repr(float(self.samples[ti, si]))])
        with open(json_path, "w", encoding="utf-8") as f:
            json.dump(self.sidecar(), f, indent=2, sort_keys=True)


def derive_rng(master_seed: int, mode_index: int, channel: int) -> np.random.Generator:
    """Philox stream for (master seed, mode, channel); see the module docstring."""
    seq = np.random.SeedSequence(master_seed, spawn_key=(mode_index, channel))
    return np.random.Generator(np.random.Philox(seq))


def simulate_photon_counts(
    xi: SqueezeParameter,
    detector: DetectorConfig,
    seed: int,
    mode_index: int = 0,
    mode_frequency: float = 0.0,
) -> MeasurementRecord:
    """Per shot: draw an even photon number from the squeezed-vacuum law,
    thin each photon with probability ``efficiency``, add Poisson dark counts.

    The number law's tail beyond cumulative mass 1 − 1e−12 is cut (documented
    cutoff). With efficiency 1 and no dark counts all samples are even.
    """
    rng = derive_rng(seed, mode_index, 0)
    probs, values = even_photon_populations(xi.r, tol=POPULATION_TAIL_CUTOFF)
    cumulative = np.cumsum(probs)
    cumulative[-1] = 1.0
    u = rng.random(detector.shots)
    photons = values[np.searchsorted(cumulative, u, side="right")]
    detected = rng.binomial(photons, detector.efficiency)
    dark = rng.poisson(detector.dark_rate, detector.shots)
    samples = (detected + dark).astype(np.int64)
    return MeasurementRecord(
        kind="photon-count",
        mode_frequency=mode_frequency,
        samples=samples,
        seed=seed,
        spawn_key=(mode_index, 0),
        detector=detector,
    )


def simulate_homodyne(
    xi: SqueezeParameter,
    omega: float,
    times,
    detector: DetectorConfig,
    seed: int,
    mode_index: int = 0,
) -> MeasurementRecord:
    """Gaussian X-quadrature samples at each requested time.

    The squeezed-vacuum quadrature distribution is exactly Gaussian with mean
    zero and the closed-form variance Var X(t); electronic noise adds
    ``extra_noise_variance``. Samples have shape (len(times), shots).
    """
    times = np.asarray(times, dtype=float)
    var_x, _ = variance_curves(xi, omega, times)
    var_x = var_x + detector.extra_noise_variance
    rng = derive_rng(seed, mode_index, 1)
    z = rng.standard_normal((times.size, detector.shots))
    samples = z * np.sqrt(var_x)[:, None]
    return MeasurementRecord(
        kind="homodyne",
        mode_frequency=omega,
        samples=samples,
        seed=seed,
        spawn_key=(mode_index, 1),
        detector=detector,
        times=times,
    )


def bin_variances(record: MeasurementRecord) -> np.ndarray:
    """Unbiased per-time-bin sample variances of a homodyne record."""
    if record.kind != "homodyne":
        raise ValueError("bin variances are defined for homodyne records")
    return np.var(record.samples, axis=1, ddof=1)


def fluctuation_amplitude(variances) -> float:
    """Amplitude A = max over time bins of the variance curve (or estimates)."""
    return float(np.max(np.asarray(variances, dtype=float)))


def estimate_fluctuation_amplitude(record: MeasurementRecord, min_bins: int = 16) -> float:
    """A(ω) estimated as the max over time bins of the unbiased sample variance.

    Requires at least ``min_bins`` bins covering a full rotation period. The
    max statistic is biased upward by roughly one standard error of a single
    bin's variance estimate, A·√(2/(m−1)) for m samples per bin; the bias
    shrinks with per-bin sample count and is not corrected here.
    """
    if record.kind != "homodyne" or record.times is None:
        raise ValueError("amplitude estimation needs a homodyne record with times")
    n_bins = record.times.size
    if n_bins < min_bins:
        raise ResolutionError(f"need at least {min_bins} time bins, got {n_bins}")
    period = 2.0 * np.pi / record.mode_frequency
    span = float(record.times.max() - record.times.min())
    mean_spacing = span / max(n_bins - 1, 1)
    if span + mean_spacing < period - 1e-9:
        raise ResolutionError(
            f"record spans {span:.6g} which does not cover one period {period:.6g}"
        )
    return fluctuation_amplitude(bin_variances(record))


def xi_from_amplitude(amplitude):
    """Invert A = e^{2r}/2: r = ln(2A)/2, clamped to 0 below the vacuum floor.

    Returns (r, clamped); works elementwise on arrays. Clamping (A < 1/2)
    is flagged, not an error: finite samples routinely dip below the floor.
    """
    a = np.asarray(amplitude, dtype=float)
    clamped = a < 0.5
    r = np.where(clamped, 0.0, 0.5 * np.log(np.maximum(2.0 * a, 1.0)))
    if a.ndim == 0:
        return float(r), bool(clamped)
    return r, clamped


def simulate_quadrature_pairs(
    xi: SqueezeParameter,
    omega: float,
    t1: float,
    t2: float,
    shots: int,
    seed: int,
    mode_index: int = 0,
) -> np.ndarray:
    """Correlated (X(t₁), X(t₂)) draws from the symmetrized Gaussian statistics.

    The rotating squeezed vacuum is Gaussian, so the pair distribution is the
    bivariate normal with the closed-form symmetrized covariance. This is the
    Monte-Carlo route to the two-time correlation (independent per-time
    homodyne records cannot carry cross-time correlations). Shape (shots, 2).
    """
    c11 = symmetrized_two_time_correlation(xi, omega, t1, t1)
    c22 = symmetrized_two_time_correlation(xi, omega, t2, t2)
    c12 = symmetrized_two_time_correlation(xi, omega, t1, t2)
    rng = derive_rng(seed, mode_index, 2)
    z = rng.standard_normal((shots, 2))
    s1 = np.sqrt(c11)
    resid = max(c22 - c12**2 / c11, 0.0)
    chol = np.array([[s1, 0.0], [c12 / s1, np.sqrt(resid)]])
    return z @ chol.T


def estimate_two_time_matrix(
    xi: SqueezeParameter,
    omega: float,
    times,
    shots: int,
    seed: int,
    mode_index: int = 0,
) -> np.ndarray:
    """Monte-Carlo estimate of the two-time correlation grid Ĉ(tᵢ, tⱼ).

    Off-diagonal entries average x·y over correlated pair draws; diagonal
    entries average x² over the same stream. Each (i, j) pair consumes its
    own slice of the mode/channel stream in a fixed order.
    """
    times = np.asarray(times, dtype=float)
    n = times.size
    out = np.empty((n, n))
    rng = derive_rng(seed, mode_index, 2)
    for i in range(n):
        for j in range(i, n):
            c11 = symmetrized_two_time_correlation(xi, omega, times[i], times[i])
            if i == j:
                x = rng.standard_normal(shots) * np.sqrt(c11)
                out[i, i] = float(np.mean(x * x))
                continue
            c22 = symmetrized_two_time_correlation(xi, omega, times[j], times[j])
            c12 = symmetrized_two_time_correlation(xi, omega, times[i], times[j])
            z = rng.standard_normal((shots, 2))
            s1 = np.sqrt(c11)
            resid = max(c22 - c12**2 / c11, 0.0)
            chol = np.array([[s1, 0.0], [c12 / s1, np.sqrt(resid)]])
            xy = z @ chol.T
            out[i, j] = out[j, i] = float(np.mean(xy[:, 0] * xy[:, 1]))
    return out
