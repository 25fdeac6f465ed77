"""Truncated Fock-space linear algebra.

Dense numerics on a photon-number basis truncated at ``dim`` levels: states,
ladder operators, exact diagonalization, unitary time evolution and the Husimi
Q function. Everything downstream (Rabi model, squeezed states, quench and
measurement simulations) is built on, and checked against, this module.

Conventions
-----------
- hbar = 1; frequencies are angular (rad / time unit).
- Quadratures X = (a + a†)/√2 and P = (a − a†)/(i√2), so the vacuum has
  Var X = Var P = 1/2.
- Joint qubit ⊗ field spaces are qubit-major: the composite basis state
  |q, n⟩ maps to linear index q * dim_field + n, with the qubit in the
  σ_z eigenbasis ordered excited-first (q = 0 ↔ σ_z = +1).
- Operators are plain dense complex ndarrays; target dimensions are a few
  thousand at most, sparsity is deliberately not exploited.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, expm

from .errors import (
    IntegrationFailureError,
    InvalidDimensionError,
    NumericalFailureError,
    SymmetryViolationError,
    TruncationOverflowError,
)

# Absolute tolerances used by contract checks throughout the package.
HERMITICITY_TOL = 1e-12
EVOLVE_NORM_DRIFT_TOL = 1e-8
GROUND_RESIDUAL_TOL = 1e-9
TRACE_TOL = 1e-8
DEFAULT_TAIL_TOL = 1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
QUBIT_EXCITED = np.array([1.0, 0.0], dtype=complex)
QUBIT_GROUND = np.array([0.0, 1.0], dtype=complex)


class FockState:
    """Pure state over the truncated number basis |0⟩ … |dim−1⟩.

    Amplitudes are stored read-only; operations return new instances, so
    instances are safe to share across threads.
    """

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes, normalize=False):
        amp = np.array(amplitudes, dtype=complex)
        if amp.ndim != 1 or amp.size < 1:
            raise InvalidDimensionError("amplitudes must be a non-empty 1-D sequence")
        if normalize:
            nrm = np.linalg.norm(amp)
            if nrm == 0.0:
                raise ValueError("cannot normalize the zero vector")
            amp /= nrm
        amp.setflags(write=False)
        self.amplitudes = amp

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "FockState":
        return FockState(self.amplitudes, normalize=True)

    def overlap(self, other: "FockState") -> complex:
        """⟨self|other⟩; states of different dimension are zero-padded."""
        a, b = self.amplitudes, other.amplitudes
        n = min(a.size, b.size)
        return complex(np.vdot(a[:n], b[:n]))

    def fidelity(self, other: "FockState") -> float:
        return float(abs(self.overlap(other)) ** 2)

    def expectation(self, op: np.ndarray) -> complex:
        return complex(np.vdot(self.amplitudes, op @ self.amplitudes))

    def real_expectation(self, op: np.ndarray) -> float:
        return float(np.real(self.expectation(op)))

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def number_mean(self) -> float:
        return float(np.sum(np.arange(self.dim) * self.populations()))

    def tail_mass(self, levels: int = 4) -> float:
        """Probability mass in the top ``levels`` basis states."""
        return float(np.sum(self.populations()[-levels:]))

    def is_converged(self, tail_tol: float = DEFAULT_TAIL_TOL, levels: int = 4) -> bool:
        return self.tail_mass(levels) < tail_tol

    def padded(self, dim: int) -> "FockState":
        if dim < self.dim:
            raise InvalidDimensionError("cannot pad to a smaller dimension")
        amp = np.zeros(dim, dtype=complex)
        amp[: self.dim] = self.amplitudes
        return FockState(amp)

    def __repr__(self) -> str:  # pragma: no cover
        return f"FockState(dim={self.dim}, <n>={self.number_mean():.6g})"


def basis_state(n: int, dim: int) -> FockState:
    """Number eigenstate |n⟩ in a dim-level truncation."""
    if not 0 <= n < dim:
        raise InvalidDimensionError(f"level {n} outside truncation 0..{dim - 1}")
    amp = np.zeros(dim, dtype=complex)
    amp[n] = 1.0
    return FockState(amp)


def vacuum(dim: int) -> FockState:
    return basis_state(0, dim)


def annihilation(dim: int) -> np.ndarray:
    """Ladder operator a with ⟨n−1|a|n⟩ = √n.

    The commutator [a, a†] equals the identity only on the sub-block
    n < dim−1; the truncation edge is corrupt by construction.
    """
    if dim < 2:
        raise InvalidDimensionError("annihilation operator needs dim >= 2")
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def creation(dim: int) -> np.ndarray:
    return annihilation(dim).conj().T


def number_operator(dim: int) -> np.ndarray:
    if dim < 1:
        raise InvalidDimensionError("number operator needs dim >= 1")
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def quadrature_x(dim: int) -> np.ndarray:
    a = annihilation(dim)
    return (a + a.conj().T) / np.sqrt(2.0)


def quadrature_p(dim: int) -> np.ndarray:
    a = annihilation(dim)
    return (a - a.conj().T) / (1j * np.sqrt(2.0))


def coherent_state(alpha: complex, dim: int, tail_tol: float = DEFAULT_TAIL_TOL) -> FockState:
    """Coherent state with amplitude alpha, renormalized over the truncation.

    Uses the stable recurrence c_n = c_{n-1} · α/√n starting from
    c_0 = exp(−|α|²/2). Raises TruncationOverflowError when the discarded
    tail exceeds ``tail_tol`` (the truncation requirement is |α|² ≪ dim).
    """
    if dim < 1:
        raise InvalidDimensionError("coherent state needs dim >= 1")
    alpha = complex(alpha)
    amp = np.empty(dim, dtype=complex)
    amp[0] = np.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, dim):
        amp[n] = amp[n - 1] * alpha / np.sqrt(n)
    captured = float(np.sum(np.abs(amp) ** 2))
    if 1.0 - captured > tail_tol:
        raise TruncationOverflowError(
            f"coherent state |alpha|^2={abs(alpha)**2:.3g} leaks {1.0 - captured:.3g} "
            f"past dim={dim} (tolerance {tail_tol:.3g})"
        )
    return FockState(amp, normalize=True)


def _check_hermitian(H: np.ndarray) -> None:
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    dev = float(np.max(np.abs(H - H.conj().T)))
    if dev > HERMITICITY_TOL * scale:
        raise SymmetryViolationError(f"operator is not Hermitian: max |H - H†| = {dev:.3g}")


def hermitian_ground_state(H: np.ndarray) -> tuple[float, FockState]:
    """Lowest eigenpair of a Hermitian operator by dense diagonalization.

    Post-condition ‖Hψ − Eψ‖ < 1e−9 is verified on the returned pair.
    """
    _check_hermitian(H)
    w, v = eigh(H, subset_by_index=(0, 0))
    energy = float(w[0])
    state = FockState(v[:, 0])
    residual = float(np.linalg.norm(H @ state.amplitudes - energy * state.amplitudes))
    if residual >= GROUND_RESIDUAL_TOL * max(1.0, abs(energy)):
        raise NumericalFailureError(f"eigensolver residual {residual:.3g} too large")
    return energy, state


def evolve(state: FockState, H: np.ndarray, t: float, method: str = "expm") -> FockState:
    """Apply exp(−iHt) to a state.

    Two independent routes are provided and cross-checked in the test suite:
    ``expm`` (scaling-and-squaring Padé) and ``eigh`` (full eigendecomposition,
    see :class:`Propagator`). Norm drift beyond 1e−8 raises
    IntegrationFailureError.
    """
    _check_hermitian(H)
    if method == "expm":
        out = expm(-1j * H * t) @ state.amplitudes
    elif method == "eigh":
        out = Propagator(H).apply(state, t).amplitudes
    else:
        raise ValueError(f"unknown evolution method {method!r}")
    drift = abs(float(np.linalg.norm(out)) - state.norm)
    if drift > EVOLVE_NORM_DRIFT_TOL:
        raise IntegrationFailureError(f"norm drift {drift:.3g} during evolution")
    return FockState(out)


class Propagator:
    """Reusable exp(−iHt) built from one eigendecomposition of Hermitian H.

    Cheap to apply at many times; this is the batched-evolution route used by
    the rotating-state and quench simulations.
    """

    def __init__(self, H: np.ndarray):
        _check_hermitian(H)
        self.eigenvalues, self.eigenvectors = eigh(H)

    def apply(self, state: FockState, t: float) -> FockState:
        v = self.eigenvectors
        phases = np.exp(-1j * self.eigenvalues * t)
        out = v @ (phases * (v.conj().T @ state.amplitudes))
        return FockState(out)

    def unitary(self, t: float) -> np.ndarray:
        v = self.eigenvectors
        return (v * np.exp(-1j * self.eigenvalues * t)) @ v.conj().T

    def evolve_density(self, rho: np.ndarray, t: float) -> np.ndarray:
        u = self.unitary(t)
        return u @ rho @ u.conj().T


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Husimi Q values sampled on a rectangular window of the complex plane.

    ``values[i, j]`` is Q at α = re_axis[j] + i·im_axis[i] (units 1/area).
    """

    re_axis: np.ndarray
    im_axis: np.ndarray
    values: np.ndarray

    @property
    def cell_area(self) -> float:
        dre = float(self.re_axis[1] - self.re_axis[0])
        dim_ = float(self.im_axis[1] - self.im_axis[0])
        return dre * dim_

    def integral(self) -> float:
        """Riemann sum of Q over the window; ≤ 1 up to quadrature error."""
        return float(np.sum(self.values) * self.cell_area)

    def moments(self) -> tuple[np.ndarray, np.ndarray]:
        """Mean vector and 2×2 covariance of Q over (Re α, Im α)."""
        w = self.values * self.cell_area
        total = float(np.sum(w))
        re, im = np.meshgrid(self.re_axis, self.im_axis)
        mu = np.array([np.sum(w * re), np.sum(w * im)]) / total
        dre, dim_ = re - mu[0], im - mu[1]
        cov = (
            np.array(
                [
                    [np.sum(w * dre * dre), np.sum(w * dre * dim_)],
                    [np.sum(w * dim_ * dre), np.sum(w * dim_ * dim_)],
                ]
            )
            / total
        )
        return mu, cov

    def major_axis_angle(self) -> float:
        """Orientation (radians, mod π) of the largest-variance axis of Q."""
        _, cov = self.moments()
        evals, evecs = np.linalg.eigh(cov)
        major = evecs[:, int(np.argmax(evals))]
        return float(np.arctan2(major[1], major[0]) % np.pi)

    def axis_ratio(self) -> float:
        """Ratio of largest to smallest covariance eigenvalue (≥ 1)."""
        _, cov = self.moments()
        evals = np.linalg.eigvalsh(cov)
        return float(evals[-1] / evals[0])


def husimi_q(
    state: FockState,
    window: tuple[float, float, float, float] | None = None,
    resolution: int = 201,
    widths: float = 4.0,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> PhaseSpaceGrid:
    """Husimi function Q(α) = |⟨α|ψ⟩|² / π on a grid.

    ``window`` is (re_min, re_max, im_min, im_max); when omitted it is sized
    automatically to ``widths`` Q-function standard deviations around the
    state's centroid. The coherent-state overlap uses exact (un-renormalized)
    coefficients, so Q is exact for any converged state; a state whose own
    tail mass exceeds ``tail_tol`` raises TruncationOverflowError.
    """
    if resolution < 2:
        raise InvalidDimensionError("grid resolution must be at least 2")
    if not state.is_converged(tail_tol):
        raise TruncationOverflowError(
            f"state tail mass {state.tail_mass():.3g} exceeds {tail_tol:.3g}; "
            "increase the truncation before evaluating the Husimi function"
        )
    psi = state.amplitudes
    dim = state.dim
    a = annihilation(dim)
    mean_a = complex(np.vdot(psi, a @ psi))
    x_op, p_op = quadrature_x(dim), quadrature_p(dim)
    var_x = float(np.real(np.vdot(psi, x_op @ (x_op @ psi)))) - float(np.real(np.vdot(psi, x_op @ psi))) ** 2
    var_p = float(np.real(np.vdot(psi, p_op @ (p_op @ psi)))) - float(np.real(np.vdot(psi, p_op @ psi))) ** 2
    if window is None:
        # Q-function widths: quadrature variance / 2 plus the coherent 1/4.
        sig_re = np.sqrt(var_x / 2.0 + 0.25)
        sig_im = np.sqrt(var_p / 2.0 + 0.25)
        window = (
            mean_a.real - widths * sig_re,
            mean_a.real + widths * sig_re,
            mean_a.imag - widths * sig_im,
            mean_a.imag + widths * sig_im,
        )
    re_axis = np.linspace(window[0], window[1], resolution)
    im_axis = np.linspace(window[2], window[3], resolution)
    re, im = np.meshgrid(re_axis, im_axis)
    alpha_conj = re - 1j * im
    # ⟨α|ψ⟩ accumulated through the coherent recurrence, term_n = conj(c_n(α)).
    term = np.exp(-0.5 * (re**2 + im**2)) * np.ones_like(alpha_conj)
    overlap = term * psi[0]
    for n in range(1, dim):
        term = term * alpha_conj / np.sqrt(n)
        overlap += term * psi[n]
    values = np.abs(overlap) ** 2 / np.pi
    return PhaseSpaceGrid(re_axis=re_axis, im_axis=im_axis, values=values)


def qubit_field_tensor(field_op: np.ndarray, qubit_op: np.ndarray) -> np.ndarray:
    """Kronecker product in the fixed qubit-major ordering: qubit ⊗ field."""
    if qubit_op.shape != (2, 2):
        raise InvalidDimensionError("qubit operator must be 2x2")
    return np.kron(np.asarray(qubit_op, dtype=complex), np.asarray(field_op, dtype=complex))


def partial_trace_qubit(joint: FockState | np.ndarray) -> np.ndarray:
    """Trace the qubit out of a pure joint state, returning the field density matrix.

    The joint vector must have dimension 2·dim_field in the qubit-major
    ordering. The result is Hermitian, positive semidefinite and unit-trace
    within 1e−8 (otherwise NumericalFailureError).
    """
    amp = joint.amplitudes if isinstance(joint, FockState) else np.asarray(joint, dtype=complex)
    if amp.ndim != 1 or amp.size % 2 != 0:
        raise InvalidDimensionError("joint state dimension must be 2 * dim_field")
    blocks = amp.reshape(2, amp.size // 2)
    rho = blocks.T @ blocks.conj()
    rho = 0.5 * (rho + rho.conj().T)
    trace_dev = abs(float(np.real(np.trace(rho))) - 1.0)
    if trace_dev > TRACE_TOL:
        raise NumericalFailureError(f"partial trace deviates from unit trace by {trace_dev:.3g}")
    return rho


def density_expectation(rho: np.ndarray, op: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ op)))


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


def fidelity_with_pure(rho: np.ndarray, state: FockState) -> float:
    """⟨ψ|ρ|ψ⟩ between a density operator and a pure target."""
    psi = state.amplitudes
    if psi.size != rho.shape[0]:
        n = min(psi.size, rho.shape[0])
        return float(np.real(np.vdot(psi[:n], rho[:n, :n] @ psi[:n])))
    return float(np.real(np.vdot(psi, rho @ psi)))


def save_complex_csv(path, matrix: np.ndarray) -> None:
    """Serialize a complex matrix as row-major (re, im) pairs.

    Format: first row ``rows,cols``; each subsequent row holds one matrix row
    as alternating real and imaginary parts, full-precision repr floats.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow([m.shape[0], m.shape[1]])
        for row in m:
            flat = []
            for z in row:
                flat.append(repr(float(z.real)))
                flat.append(repr(float(z.imag)))
            writer.writerow(flat)


def load_complex_csv(path) -> np.ndarray:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        rows, cols = (int(x) for x in next(reader))
        out = np.empty((rows, cols), dtype=complex)
        for i, row in enumerate(reader):
            vals = np.array([float(x) for x in row])
            out[i] = vals[0::2] + 1j * vals[1::2]
    return out
