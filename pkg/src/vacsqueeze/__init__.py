"""vacsqueeze: weakly squeezed electromagnetic vacua, end to end.

Truncated Fock-space numerics, the quantum Rabi model and its effective
squeezed-oscillator ground state, squeezed-vacuum dynamics and closed forms,
coupling-quench simulation, Monte-Carlo detector models, and the
photon-count-vs-field-fluctuation spectrum test.
"""

from .errors import (
    BeyondCriticalError,
    ConfigError,
    GridAlignmentError,
    IntegrationFailureError,
    InvalidDimensionError,
    NumericalFailureError,
    ResolutionError,
    SymmetryViolationError,
    TruncationOverflowError,
    VacsqueezeError,
)
from .fock import (
    FockState,
    PhaseSpaceGrid,
    Propagator,
    annihilation,
    basis_state,
    coherent_state,
    creation,
    density_expectation,
    evolve,
    fidelity_with_pure,
    hermitian_ground_state,
    husimi_q,
    load_complex_csv,
    number_operator,
    partial_trace_qubit,
    purity,
    quadrature_p,
    quadrature_x,
    qubit_field_tensor,
    save_complex_csv,
    vacuum,
)
from .measurement import (
    DetectorConfig,
    MeasurementRecord,
    derive_rng,
    estimate_fluctuation_amplitude,
    estimate_two_time_matrix,
    fluctuation_amplitude,
    simulate_homodyne,
    simulate_photon_counts,
    simulate_quadrature_pairs,
    xi_from_amplitude,
)
from .quench import QuenchResult, adiabatic_reference, run_quench
from .rabi import (
    FieldStateReport,
    RabiParams,
    SwValidity,
    build_effective_hamiltonian,
    build_rabi_hamiltonian,
    critical_coupling,
    effective_ground_energy,
    effective_ground_state,
    exact_ground_field_state,
    squeezing_parameter,
    sw_validity,
)
from .spectrum import (
    ComparisonConfig,
    CountSpectrum,
    FluctuationSpectrum,
    ModeRecords,
    ModeSpectrum,
    SpectrumComparison,
    compare_spectra,
    flat_spectrum,
    gaussian_bump_spectrum,
    generate_spectrum_data,
    power_law_spectrum,
    predicted_counts_from_fluctuations,
    run_spectrum_test,
    spectrum_from_table,
    spectrum_to_table,
    summarize_counts,
    summarize_fluctuations,
)
from .squeezed import (
    QuadratureVariances,
    SqueezeParameter,
    even_photon_populations,
    fit_two_time_components,
    photon_number,
    quadrature_variances,
    rotate_and_report,
    squeezed_vacuum,
    squeezed_vacuum_fock_series,
    symmetrized_two_time_correlation,
    two_time_matrix_from_state,
    variance_curves,
    weak_squeezing_approx,
)

__version__ = "0.1.0"
