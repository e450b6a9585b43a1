"""Decoherence from classically driven quantum gates.

Driving a gate with a coherent field entangles the qubit with the photons it
scatters back into the field.  This package quantifies that back-reaction:
spectral functions and overlap integrals of the scattered one-photon states,
their effect on Grover search, the first-order emission spectrum of a driven
two-qubit gate, and the photon budgets that bound qubit counts per platform.
"""
from . import backreaction, cnot_sim, driven_qubit, grover_sim, photon_budget, targets
from .backreaction import (
    KINDS,
    ConvergenceError,
    OnePhotonEnvelope,
    OverlapTable,
    PhotonKind,
    ScatterOps,
    classical_envelope,
    classical_spectrum,
    envelope,
    g_samples,
    g_value,
    gram_matrix,
    integral_table,
    scattering_operators,
)
from .cnot_sim import (
    DysonSpectrum,
    Eigensystem,
    TwoQubitParams,
    calibrate_pulse,
    dyson_first_order,
    eigensystem,
    rotating_hamiltonian,
    transfer_amplitude,
    transition_frequencies,
)
from .driven_qubit import (
    HADAMARD,
    PulseParams,
    frame_phases,
    rotating_frame_propagator,
    strip_global_phase,
    strip_row_phases,
    walsh_hadamard_calibration,
)
from .grover_sim import (
    DecoherentState,
    GroverConfig,
    IdealRun,
    Register,
    ResidualProjection,
    ScatterBranch,
    ScatterReport,
    StepScatter,
    apply_single_qubit,
    apply_walsh,
    closed_form_scatter,
    decoherent_run,
    ideal_run,
    optimal_iterations,
    reduced_rotation,
    residual_projection,
    rotation_angle,
)
from .photon_budget import (
    PRESETS,
    BudgetReport,
    PlatformPreset,
    budget_report,
    decoherence_probability,
    load_presets,
    max_qubits,
    photons_per_pulse,
    with_ensemble,
)

__version__ = "0.1.0"
