"""Quantum Rabi model and its effective squeezed-oscillator description.

A single bosonic mode (frequency ω) coupled to a two-level atom (frequency Ω)
without the rotating-wave approximation:

    H = ω a†a + (Ω/2) σ_z + (g/2)(a + a†) σ_x.

For Ω ≫ ω and coupling below the critical value g_c = √(ωΩ), eliminating the
atom perturbatively leaves an effective field-only oscillator

    H_eff = ω a†a − g²/(4Ω) (a + a†)²,

whose ground state is the squeezed vacuum with ξ = ¼ ln(1 − g²/g_c²) ≤ 0. The
elimination is trusted while 1 − g²/g_c² > (ω/Ω)^{2/3}; the margin of that
inequality is exposed rather than converted into a fidelity guarantee.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import fock
from .errors import BeyondCriticalError, TruncationOverflowError
from .fock import FockState
from .squeezed import ADAPTIVE_MAX_DIM, ADAPTIVE_START_DIM, SqueezeParameter, squeezed_vacuum


@dataclass(frozen=True)
class RabiParams:
    """Light-matter system parameters (all in rad / time unit).

    omega: field frequency; Omega: qubit frequency; g: coupling strength.
    The critical coupling g_c = √(omega·Omega) is always derived, never an
    input.
    """

    omega: float
    Omega: float
    g: float

    def __post_init__(self):
        if not (self.omega > 0 and np.isfinite(self.omega)):
            raise ValueError(f"field frequency must be positive, got {self.omega}")
        if not (self.Omega > 0 and np.isfinite(self.Omega)):
            raise ValueError(f"qubit frequency must be positive, got {self.Omega}")
        if not (self.g >= 0 and np.isfinite(self.g)):
            raise ValueError(f"coupling must be non-negative, got {self.g}")

    @property
    def g_c(self) -> float:
        return float(np.sqrt(self.omega * self.Omega))

    @property
    def coupling_ratio(self) -> float:
        return self.g / self.g_c


def critical_coupling(params: RabiParams) -> float:
    """Coupling g_c = √(ωΩ) at which the effective oscillator frequency vanishes."""
    return params.g_c


def squeezing_parameter(params: RabiParams) -> SqueezeParameter:
    """ξ = ¼ ln(1 − g²/g_c²), returned as magnitude r = |ξ| with θ = π.

    Beyond-critical coupling (g ≥ g_c) is a hard error: the logarithm's
    argument hits zero and the effective-oscillator picture breaks.
    """
    ratio = params.coupling_ratio
    if ratio >= 1.0:
        raise BeyondCriticalError(
            f"g/g_c = {ratio:.6g} >= 1: no squeezed ground state below criticality"
        )
    xi = 0.25 * np.log1p(-(ratio**2))
    return SqueezeParameter(r=float(-xi), theta=np.pi)


@dataclass(frozen=True)
class SwValidity:
    """Perturbative-elimination validity check 1 − g²/g_c² > (ω/Ω)^{2/3}."""

    valid: bool
    margin: float
    lhs: float
    rhs: float


def sw_validity(params: RabiParams) -> SwValidity:
    lhs = 1.0 - params.coupling_ratio**2
    rhs = (params.omega / params.Omega) ** (2.0 / 3.0)
    return SwValidity(valid=bool(lhs > rhs), margin=float(lhs - rhs), lhs=float(lhs), rhs=float(rhs))


def build_rabi_hamiltonian(params: RabiParams, dim: int) -> np.ndarray:
    """Full Rabi Hamiltonian on the joint qubit-major space (dimension 2·dim).

    Real symmetric in this basis (all coefficients real); symmetrized
    explicitly so the Hermiticity contract holds to the last bit.
    """
    a = fock.annihilation(dim)
    ad = a.conj().T
    identity_f = np.eye(dim, dtype=complex)
    h = (
        fock.qubit_field_tensor(params.omega * (ad @ a), np.eye(2, dtype=complex))
        + fock.qubit_field_tensor(identity_f, 0.5 * params.Omega * fock.SIGMA_Z)
        + fock.qubit_field_tensor(0.5 * params.g * (a + ad), fock.SIGMA_X)
    )
    return 0.5 * (h + h.conj().T)


def build_effective_hamiltonian(params: RabiParams, dim: int) -> np.ndarray:
    """Field-only effective Hamiltonian ω a†a − g²/(4Ω) (a + a†)².

    Ground energy is (ω√(1 − g²/g_c²) − ω)/2; its ground state is the
    squeezed vacuum with ξ = ¼ ln(1 − g²/g_c²). Raises beyond criticality,
    where the effective frequency would be imaginary.
    """
    if params.coupling_ratio >= 1.0:
        raise BeyondCriticalError(
            f"g/g_c = {params.coupling_ratio:.6g} >= 1: effective oscillator unstable"
        )
    a = fock.annihilation(dim)
    ad = a.conj().T
    x_sq = (a + ad) @ (a + ad)
    h = params.omega * (ad @ a) - params.g**2 / (4.0 * params.Omega) * x_sq
    return 0.5 * (h + h.conj().T)


def effective_ground_energy(params: RabiParams) -> float:
    """Closed-form ground energy of the effective oscillator."""
    if params.coupling_ratio >= 1.0:
        raise BeyondCriticalError("no stable effective oscillator at or beyond g_c")
    return 0.5 * params.omega * (np.sqrt(1.0 - params.coupling_ratio**2) - 1.0)


def effective_ground_state(
    params: RabiParams,
    dim: int | None = None,
    tail_tol: float = fock.DEFAULT_TAIL_TOL,
) -> tuple[float, FockState]:
    """Numeric ground pair of the effective Hamiltonian at adaptive truncation."""

    def solve(d):
        return fock.hermitian_ground_state(build_effective_hamiltonian(params, d))

    if dim is not None:
        energy, state = solve(dim)
        if not state.is_converged(tail_tol):
            raise TruncationOverflowError(f"effective ground state not converged at dim={dim}")
        return energy, state
    d = ADAPTIVE_START_DIM
    while d <= ADAPTIVE_MAX_DIM:
        energy, state = solve(d)
        if state.is_converged(tail_tol):
            return energy, state
        d *= 2
    raise TruncationOverflowError("effective ground state not converged at maximum truncation")


def joint_parity_expectation(state: FockState, dim_field: int) -> float:
    """⟨σ_z ⊗ (−1)^n⟩ of a joint state; ±1 for the parity-conserving eigenstates."""
    signs = np.where(np.arange(dim_field) % 2 == 0, 1.0, -1.0)
    parity_diag = np.concatenate([signs, -signs])
    return float(np.sum(parity_diag * np.abs(state.amplitudes) ** 2))


@dataclass(frozen=True)
class FieldStateReport:
    """Summary of the exact reduced field state against the squeezed-vacuum target."""

    fidelity: float
    xi: SqueezeParameter
    n_mean: float
    n_mean_predicted: float
    purity: float
    ground_energy: float
    joint_parity: float
    dim: int
    sw: SwValidity


def exact_ground_field_state(
    params: RabiParams,
    dim: int | None = None,
    tail_tol: float = fock.DEFAULT_TAIL_TOL,
    max_dim: int = 1024,
) -> tuple[np.ndarray, FieldStateReport]:
    """Diagonalize the full Rabi model, trace out the qubit, compare to S(ξ)|0⟩.

    Returns the field density matrix and a report with the fidelity ⟨ψ_ξ|ρ|ψ_ξ⟩.
    Runs (with a warning) even when the validity inequality fails.
    """
    sw = sw_validity(params)
    if not sw.valid:
        warnings.warn(
            f"perturbative-elimination validity margin is {sw.margin:.3g} <= 0; "
            "the squeezed-vacuum comparison may be poor",
            stacklevel=2,
        )
    xi = squeezing_parameter(params)

    def solve(d):
        energy, joint = fock.hermitian_ground_state(build_rabi_hamiltonian(params, d))
        rho = fock.partial_trace_qubit(joint)
        return energy, joint, rho

    if dim is not None:
        energy, joint, rho = solve(dim)
        d = dim
    else:
        d = ADAPTIVE_START_DIM
        while True:
            energy, joint, rho = solve(d)
            tail = float(np.sum(np.real(np.diag(rho))[-4:]))
            if tail < tail_tol or d >= max_dim:
                if tail >= tail_tol:
                    raise TruncationOverflowError(
                        f"reduced state tail mass {tail:.3g} at maximum dim={d}"
                    )
                break
            d *= 2

    target = squeezed_vacuum(xi, dim=d) if xi.r > 0 else fock.vacuum(d)
    report = FieldStateReport(
        fidelity=fock.fidelity_with_pure(rho, target),
        xi=xi,
        n_mean=fock.density_expectation(rho, fock.number_operator(d)),
        n_mean_predicted=float(np.sinh(xi.r) ** 2),
        purity=fock.purity(rho),
        ground_energy=energy,
        joint_parity=joint_parity_expectation(joint, d),
        dim=d,
        sw=sw,
    )
    return rho, report
