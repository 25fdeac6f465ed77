import numpy as np
import pytest

from vacsqueeze import (
    BeyondCriticalError,
    RabiParams,
    build_effective_hamiltonian,
    build_rabi_hamiltonian,
    critical_coupling,
    effective_ground_energy,
    effective_ground_state,
    exact_ground_field_state,
    hermitian_ground_state,
    squeezing_parameter,
    sw_validity,
)
from vacsqueeze.fock import number_operator
from vacsqueeze.rabi import joint_parity_expectation
from vacsqueeze.squeezed import SqueezeParameter, squeezed_vacuum


def params_for_ratio(ratio, omega=1.0, Omega=100.0):
    return RabiParams(omega=omega, Omega=Omega, g=ratio * np.sqrt(omega * Omega))


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            RabiParams(omega=-1.0, Omega=1.0, g=0.0)
        with pytest.raises(ValueError):
            RabiParams(omega=1.0, Omega=0.0, g=0.0)
        with pytest.raises(ValueError):
            RabiParams(omega=1.0, Omega=1.0, g=-0.1)

    def test_critical_coupling(self):
        assert critical_coupling(RabiParams(1.0, 100.0, 0.0)) == pytest.approx(10.0, abs=1e-12)
        assert critical_coupling(RabiParams(1.0, 1.0, 0.0)) == pytest.approx(1.0, abs=1e-12)
        # square-root homogeneity: omega -> 4*omega doubles g_c
        base = critical_coupling(RabiParams(0.7, 3.1, 0.0))
        assert critical_coupling(RabiParams(2.8, 3.1, 0.0)) == pytest.approx(2 * base, rel=1e-12)


class TestSqueezingParameter:
    def test_zero_coupling(self):
        xi = squeezing_parameter(RabiParams(1.0, 100.0, 0.0))
        assert xi.r == 0.0

    def test_known_values(self):
        xi = squeezing_parameter(params_for_ratio(0.6))
        assert xi.r == pytest.approx(0.1115718, abs=1e-7)
        assert xi.theta == pytest.approx(np.pi)
        xi = squeezing_parameter(params_for_ratio(0.3))
        assert xi.r == pytest.approx(0.0235777, abs=1e-7)

    def test_beyond_critical(self):
        with pytest.raises(BeyondCriticalError):
            squeezing_parameter(params_for_ratio(1.0))
        with pytest.raises(BeyondCriticalError):
            squeezing_parameter(params_for_ratio(1.2))


class TestSwValidity:
    def test_reference_point(self):
        sw = sw_validity(RabiParams(1.0, 100.0, 3.0))
        assert sw.valid
        assert sw.rhs == pytest.approx(0.046415888, abs=1e-9)
        assert sw.margin == pytest.approx(0.91 - 0.0464158883, abs=1e-9)

    def test_zero_coupling(self):
        assert sw_validity(RabiParams(1.0, 50.0, 0.0)).valid

    def test_critical_coupling_invalid(self):
        sw = sw_validity(params_for_ratio(1.0))
        assert not sw.valid
        assert sw.lhs == pytest.approx(0.0, abs=1e-12)


class TestRabiHamiltonian:
    def test_decoupled_ground_energy(self):
        h = build_rabi_hamiltonian(RabiParams(1.0, 100.0, 0.0), dim=16)
        energy, _ = hermitian_ground_state(h)
        assert energy == pytest.approx(-50.0, abs=1e-10)

    def test_real_symmetric(self):
        h = build_rabi_hamiltonian(RabiParams(1.0, 100.0, 3.0), dim=12)
        assert np.max(np.abs(h.imag)) == 0.0
        assert np.max(np.abs(h - h.T)) == 0.0

    def test_ground_photon_number(self):
        # beyond the eliminated-qubit picture, the counter-rotating admixture
        # |1,up> adds (g/2(omega+Omega))^2 on top of sinh^2(xi)
        params = RabiParams(1.0, 100.0, 3.0)
        _, report = exact_ground_field_state(params)
        xi = squeezing_parameter(params)
        counter_rotating = (params.g / (2 * (params.omega + params.Omega))) ** 2
        expected = np.sinh(xi.r) ** 2 + counter_rotating
        assert report.n_mean == pytest.approx(expected, rel=0.1)
        assert report.n_mean == pytest.approx(7.7464e-4, rel=1e-3)

    def test_ground_photon_number_dominated_by_squeezing(self):
        # at g/g_c = 0.6 the squeezing contribution dominates: plain sinh^2 within 10%
        _, report = exact_ground_field_state(params_for_ratio(0.6))
        assert report.n_mean == pytest.approx(report.n_mean_predicted, rel=0.1)


class TestEffectiveHamiltonian:
    def test_zero_coupling_is_free_field(self):
        # sqrt(n)*sqrt(n) rounds at eps; equality holds to machine precision
        h = build_effective_hamiltonian(RabiParams(1.0, 100.0, 0.0), dim=8)
        assert np.max(np.abs(h - number_operator(8))) < 1e-13

    def test_ground_state_is_squeezed_vacuum(self):
        params = params_for_ratio(0.6)
        _, state = effective_ground_state(params)
        target = squeezed_vacuum(squeezing_parameter(params), dim=state.dim)
        assert state.fidelity(target) >= 1 - 1e-8

    def test_ground_energy_closed_form(self):
        params = params_for_ratio(0.6)
        energy, _ = effective_ground_state(params)
        assert energy == pytest.approx(effective_ground_energy(params), abs=1e-10)
        assert effective_ground_energy(params) == pytest.approx((0.8 - 1.0) / 2.0, abs=1e-12)

    def test_beyond_critical(self):
        with pytest.raises(BeyondCriticalError):
            build_effective_hamiltonian(params_for_ratio(1.0), dim=16)
        with pytest.raises(BeyondCriticalError):
            effective_ground_energy(params_for_ratio(1.05))

    def test_photon_number_identity_across_couplings(self):
        for ratio in (0.2, 0.6, 0.9):
            params = params_for_ratio(ratio)
            _, state = effective_ground_state(params)
            xi = squeezing_parameter(params)
            assert abs(state.number_mean() - np.sinh(xi.r) ** 2) < 1e-8

    def test_argmin_over_squeezed_family(self):
        # <H_eff> over S(xi')|0> is minimized at the derived xi (coarse 1-D scan)
        params = params_for_ratio(0.6)
        h = build_effective_hamiltonian(params, dim=48)
        xi_star = -squeezing_parameter(params).r
        grid = np.linspace(xi_star - 0.1, xi_star + 0.1, 41)
        energies = []
        for xi_val in grid:
            state = squeezed_vacuum(SqueezeParameter(r=abs(xi_val), theta=np.pi if xi_val < 0 else 0.0), dim=48)
            energies.append(state.real_expectation(h))
        best = grid[int(np.argmin(energies))]
        step = grid[1] - grid[0]
        assert abs(best - xi_star) <= step


class TestExactGroundFieldState:
    def test_decoupled_is_vacuum(self):
        rho, report = exact_ground_field_state(RabiParams(1.0, 100.0, 0.0))
        assert report.fidelity == pytest.approx(1.0, abs=1e-10)
        assert rho[0, 0].real == pytest.approx(1.0, abs=1e-10)

    def test_reference_fidelity(self):
        _, report = exact_ground_field_state(RabiParams(1.0, 100.0, 3.0))
        assert report.fidelity >= 0.999

    def test_fidelity_decreases_with_frequency_ratio(self):
        fids = []
        for omega_ratio in (0.01, 0.1, 0.5):
            params = params_for_ratio(0.3, omega=1.0, Omega=1.0 / omega_ratio)
            _, report = exact_ground_field_state(params)
            fids.append(report.fidelity)
        assert fids[0] > fids[1] > fids[2]

    def test_warns_outside_validity(self):
        params = params_for_ratio(0.7, omega=1.0, Omega=2.0)
        assert not sw_validity(params).valid
        with pytest.warns(UserWarning):
            exact_ground_field_state(params, dim=32)

    def test_parity(self):
        params = RabiParams(1.0, 100.0, 3.0)
        h = build_rabi_hamiltonian(params, dim=32)
        _, joint = hermitian_ground_state(h)
        assert abs(abs(joint_parity_expectation(joint, 32)) - 1.0) < 1e-10
        # effective ground state populates even levels only
        _, eff = effective_ground_state(params)
        assert float(np.sum(eff.populations()[1::2])) < 1e-10
        # the exact reduced state leaks odd population at the counter-rotating scale
        rho, _ = exact_ground_field_state(params)
        odd_mass = float(np.sum(np.real(np.diag(rho))[1::2]))
        leak_scale = (params.g / (2 * (params.omega + params.Omega))) ** 2
        assert odd_mass < 2 * leak_scale
        assert odd_mass > 0.0

    def test_purity_below_one(self):
        _, report = exact_ground_field_state(params_for_ratio(0.6))
        assert 0.0 < report.purity <= 1.0
        assert report.purity < 1.0
