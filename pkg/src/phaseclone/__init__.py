"""Simulation and verification toolkit for 1-to-2 phase-covariant cloning of qudits.

Build the cloning isometry, run it by brute force, evaluate the closed-form
fidelities, re-derive the optimum numerically, and audit every claimed
invariant. See :mod:`phaseclone.cli` for the command-line front end.
"""

from .audit import AuditReport, CheckResult, check_covariance_structure, run_audit
from .cloner import (
    CloningMachine,
    FidelityReport,
    build_machine,
    clone_state,
    fidelity_closed_form,
    fidelity_report,
    optimal_fidelity,
    optimal_params,
    reduced_clone,
    shrink_factor,
    simulate_fidelity,
    uqcm_fidelity,
)
from .linalg import (
    EQ_TOL,
    PSD_TOL,
    DensityMatrix,
    DimensionError,
    Ket,
    dagger,
    fidelity_pure,
    frobenius_distance,
    kron,
    outer,
    partial_trace,
    trace,
)
from .optimize import ConvergenceError, SweepTable, maximize_fidelity, sweep_alpha, verify_optimum
from .states import (
    MubLabel,
    PhaseVector,
    UnsupportedDimensionError,
    is_prime,
    is_unbiased,
    mub_basis,
    mub_state,
    phase_state,
    random_phase_vector,
    standard_basis,
    symmetric_pair,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "CheckResult",
    "CloningMachine",
    "ConvergenceError",
    "DensityMatrix",
    "DimensionError",
    "EQ_TOL",
    "FidelityReport",
    "Ket",
    "MubLabel",
    "PSD_TOL",
    "PhaseVector",
    "SweepTable",
    "UnsupportedDimensionError",
    "build_machine",
    "check_covariance_structure",
    "clone_state",
    "dagger",
    "fidelity_closed_form",
    "fidelity_pure",
    "fidelity_report",
    "frobenius_distance",
    "is_prime",
    "is_unbiased",
    "kron",
    "maximize_fidelity",
    "mub_basis",
    "mub_state",
    "optimal_fidelity",
    "optimal_params",
    "outer",
    "partial_trace",
    "phase_state",
    "random_phase_vector",
    "reduced_clone",
    "run_audit",
    "shrink_factor",
    "simulate_fidelity",
    "standard_basis",
    "sweep_alpha",
    "symmetric_pair",
    "trace",
    "uqcm_fidelity",
    "verify_optimum",
]
