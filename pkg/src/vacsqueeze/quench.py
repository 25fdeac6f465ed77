"""Sudden and ramped turn-off of the light-matter coupling.

Prepare the interacting ground state (exact Rabi or effective squeezed
vacuum), swap the Hamiltonian to the free field ω a†a, and track how the
ground state's virtual population turns into real, freely evolving
excitations. The quench itself is modeled as exactly instantaneous: the state
is unchanged, only the generator changes. An adiabatic reference ramps the
coupling to zero in small piecewise-constant steps instead; a slow enough
ramp returns the field to (near) vacuum, a fast one reproduces the sudden
yield.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from . import fock
from .errors import ResolutionError
from .rabi import (
    RabiParams,
    build_effective_hamiltonian,
    effective_ground_state,
    exact_ground_field_state,
    squeezing_parameter,
)
from .squeezed import QuadratureVariances, squeezed_vacuum


@dataclass(frozen=True)
class QuenchResult:
    """Free-field traces after an instantaneous coupling turn-off.

    ``n_trace[i]`` is ⟨a†a⟩ at ``times[i]``; it is constant in time because
    the free Hamiltonian commutes with the number operator.
    """

    params: RabiParams
    source: str
    pre_quench_n: float
    times: np.ndarray
    n_trace: np.ndarray
    variances: list[QuadratureVariances]
    purity: float

    def to_csv(self, path) -> None:
        """Write (time, n, var_x, var_p) rows, full-precision repr floats."""
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["time", "n", "var_x", "var_p"])
            for t, n, v in zip(self.times, self.n_trace, self.variances):
                writer.writerow([repr(float(t)), repr(float(n)), repr(v.var_x), repr(v.var_p)])


def _observables(dim: int):
    n_op = fock.number_operator(dim)
    x_op = fock.quadrature_x(dim)
    p_op = fock.quadrature_p(dim)
    return n_op, x_op, x_op @ x_op, p_op, p_op @ p_op


def run_quench(
    params: RabiParams,
    times,
    source: str = "effective",
    dim: int | None = None,
) -> QuenchResult:
    """Instantaneous g → 0 quench followed by free evolution under ω a†a.

    source="effective": start from the squeezed vacuum S(ξ)|0⟩ (pure state).
    source="exact": start from the reduced field state of the exact Rabi
    ground state (density operator); a warning is issued when the
    perturbative-validity inequality fails.
    """
    times = np.asarray(times, dtype=float)
    xi = squeezing_parameter(params)  # also the beyond-critical gate

    if source == "effective":
        state0 = squeezed_vacuum(xi, dim=dim)
        d = state0.dim
        rho0 = None
    elif source == "exact":
        rho0, _report = exact_ground_field_state(params, dim=dim)
        d = rho0.shape[0]
        state0 = None
    else:
        raise ValueError(f"unknown quench source {source!r} (use 'effective' or 'exact')")

    n_op, x_op, x2_op, p_op, p2_op = _observables(d)
    propagator = fock.Propagator(params.omega * fock.number_operator(d))

    n_trace = np.empty(times.size)
    variances = []
    for i, t in enumerate(times):
        if rho0 is None:
            st = propagator.apply(state0, float(t))
            n_trace[i] = st.real_expectation(n_op)
            mx, mp = st.real_expectation(x_op), st.real_expectation(p_op)
            vx = st.real_expectation(x2_op) - mx**2
            vp = st.real_expectation(p2_op) - mp**2
        else:
            rho_t = propagator.evolve_density(rho0, float(t))
            n_trace[i] = fock.density_expectation(rho_t, n_op)
            mx = fock.density_expectation(rho_t, x_op)
            mp = fock.density_expectation(rho_t, p_op)
            vx = fock.density_expectation(rho_t, x2_op) - mx**2
            vp = fock.density_expectation(rho_t, p2_op) - mp**2
        variances.append(QuadratureVariances(var_x=vx, var_p=vp, t=float(t), omega=params.omega))

    if rho0 is None:
        pre_n = state0.real_expectation(n_op)
        pur = 1.0
    else:
        pre_n = fock.density_expectation(rho0, n_op)
        pur = fock.purity(rho0)

    return QuenchResult(
        params=params,
        source=source,
        pre_quench_n=float(pre_n),
        times=times,
        n_trace=n_trace,
        variances=variances,
        purity=float(pur),
    )


def adiabatic_reference(
    params: RabiParams,
    ramp_duration: float,
    steps: int,
    dim: int | None = None,
) -> float:
    """Final ⟨a†a⟩ after ramping g linearly to zero over ``ramp_duration``.

    Evolves the effective-oscillator ground state under piecewise-constant
    H_eff(g(t)), g evaluated at step midpoints. A ramp slow against the
    minimal gap 2ω√(1 − g²/g_c²) leaves the field near vacuum; the crossover
    duration is reported by experiment, not asserted. Step count is a
    convergence knob (halving it should move the result by well under 1%).
    """
    if ramp_duration <= 0:
        raise ValueError("ramp_duration must be positive")
    if steps < 10:
        raise ResolutionError(f"at least 10 ramp steps required, got {steps}")
    _, state = effective_ground_state(params, dim=dim)
    d = state.dim
    dt = ramp_duration / steps
    for k in range(steps):
        frac = 1.0 - (k + 0.5) / steps
        h = build_effective_hamiltonian(
            RabiParams(params.omega, params.Omega, params.g * frac), d
        )
        w, v = eigh(h)
        amp = v @ (np.exp(-1j * w * dt) * (v.conj().T @ state.amplitudes))
        state = fock.FockState(amp)
    return state.real_expectation(fock.number_operator(d))
