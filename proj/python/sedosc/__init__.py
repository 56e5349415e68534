"""Charged 1D harmonic oscillator driven by a classical zero-point field.

Thin wrapper around the compiled extension: vacuum-field mode sampling, the
stationary and time-domain trajectory solvers, the displaced-Gaussian
wavepacket, ladder-state energy-flow reports and Monte Carlo ensembles.
"""

from ._core import (
    CheckResult,
    EnergyFlowReport,
    EnsembleConfig,
    EnsembleStats,
    FieldModeSet,
    ModelParams,
    MomentEstimate,
    PhaseCheckResult,
    RealizationResult,
    SolverKind,
    Trajectory,
    ValidationError,
    WavepacketSample,
    acceleration_matrix_element,
    accumulate_phase,
    discrete_variance_prediction,
    draw_phases,
    energy_flow_compact,
    energy_flow_full,
    energy_flow_range,
    exact_stationary_path,
    field_at,
    field_derivative_at,
    ground_state_density,
    integrate_time_domain,
    mode_amplitude,
    narrow_resonance_value,
    phase_orthogonality_check,
    position_second_moment,
    response_function,
    run_checks,
    run_ensemble,
    sample_modes,
    schrodinger_residual,
    spectral_density,
    stationary_trajectory,
    transient_time,
    variance_integral,
    variance_integrand,
    vector_potential_at,
    wavefunction,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
