"""The 1-to-2 phase-covariant cloning machine for d-level systems.

The machine acts on basis state |j> (plus a blank copy and a d-level
ancilla) as

    |j> |Q>  ->  alpha |jj>|R_j>
                 + beta / sqrt(2(d-1)) * sum_{l != j} (|jl> + |lj>) |R_l>

with real alpha, beta >= 0, alpha^2 + beta^2 = 1, and |R_j> the ancilla
computational basis. Tensor factor order is (clone A, clone B, ancilla)
throughout, so discarding the ancilla is always a partial trace over the
last factor.

For a phase-state input the single-clone reduced output is

    rho_red = (1/d) I_diag + c * sum_{j != k} exp(i(phi_j - phi_k)) |j><k|,
    c = alpha*beta*sqrt(2/(d-1))/d + beta^2 (d-2) / (2d(d-1)),

equivalently the shrink form ``eta * rho_in + (1 - eta)/d * I`` with
``eta = d*c``, and the cloning fidelity is

    F = 1/d + alpha*beta*sqrt(2(d-1))/d + beta^2 (d-2)/(2d),

maximized at F_opt(d) = 1/d + (d - 2 + sqrt(d^2 + 4d - 4)) / (4d). The
module evaluates these closed forms and also simulates the machine by
brute force so the two routes can be checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import EQ_TOL, DensityMatrix, DimensionError, Ket, fidelity_pure, partial_trace
from .states import phase_state, random_phase_vector

PARAM_NORM_TOL = 1e-9  # max |alpha^2 + beta^2 - 1| accepted (then renormalized)


@dataclass(frozen=True)
class CloningMachine:
    """Dimension, the (alpha, beta) split, and the materialized d^3-by-d isometry.

    Column j of the isometry is the image of input basis state |j>; rows are
    indexed by (clone A, clone B, ancilla) in the fixed tensor convention.
    """

    d: int
    alpha: float
    beta: float
    isometry: np.ndarray

    def __post_init__(self):
        iso = np.array(self.isometry, dtype=np.complex128, copy=True)
        if iso.shape != (self.d**3, self.d):
            raise DimensionError(f"isometry shape {iso.shape}, expected {(self.d**3, self.d)}")
        iso.setflags(write=False)
        object.__setattr__(self, "isometry", iso)

    def unitarity_residual(self) -> float:
        """``||V^dag V - I||_F``; < 1e-12 for any machine built with valid parameters."""
        v = self.isometry
        return float(np.linalg.norm(v.conj().T @ v - np.eye(self.d)))


@dataclass(frozen=True)
class FidelityReport:
    """One verified table row: closed-form vs simulated fidelity at given parameters.

    ``f_simulated`` comes from a full brute-force run of the machine on the
    phase state drawn with ``phase_seed``; construction via
    :func:`fidelity_report` guarantees it agrees with ``f_closed`` to 1e-12.
    """

    d: int
    alpha: float
    beta: float
    f_closed: float
    f_simulated: float
    f_uqcm: float
    eta: float
    phase_seed: int

    def __post_init__(self):
        if abs(self.f_closed - self.f_simulated) >= EQ_TOL:
            raise ValueError(
                f"closed-form and simulated fidelity disagree: "
                f"{self.f_closed!r} vs {self.f_simulated!r}"
            )
        for name in ("f_closed", "f_simulated", "f_uqcm", "eta"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} = {value!r} outside [0, 1]")


def _fill_isometry(d: int, alpha: float, beta: float) -> np.ndarray:
    v = np.zeros((d**3, d), dtype=np.complex128)
    off = beta / math.sqrt(2.0 * (d - 1))
    for j in range(d):
        v[(j * d + j) * d + j, j] = alpha
        for l in range(d):
            if l != j:
                v[(j * d + l) * d + l, j] += off
                v[(l * d + j) * d + l, j] += off
    return v


def build_machine(d: int, alpha: float, beta: float) -> CloningMachine:
    """Materialize the cloning isometry for given dimension and parameter split.

    alpha and beta must be nonnegative reals with alpha^2 + beta^2 within
    1e-9 of 1; they are renormalized internally so the stored pair satisfies
    the constraint to better than 1e-15. Anything further off is rejected.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if alpha < 0.0 or beta < 0.0:
        raise ValueError(f"alpha and beta must be nonnegative, got ({alpha!r}, {beta!r})")
    norm2 = alpha * alpha + beta * beta
    if abs(norm2 - 1.0) > PARAM_NORM_TOL:
        raise ValueError(f"alpha^2 + beta^2 = {norm2!r} is not within {PARAM_NORM_TOL} of 1")
    scale = math.sqrt(norm2)
    alpha, beta = alpha / scale, beta / scale
    return CloningMachine(d, alpha, beta, _fill_isometry(d, alpha, beta))


def _build_unchecked(d: int, alpha: float, beta: float) -> CloningMachine:
    """Deliberately skip parameter validation (audit sensitivity hook only)."""
    return CloningMachine(d, alpha, beta, _fill_isometry(d, alpha, beta))


def clone_state(machine: CloningMachine, psi: Ket) -> DensityMatrix:
    """Run the machine on a single-qudit pure state; return the two-clone output.

    The ancilla is traced out without ever materializing the d^3-by-d^3
    three-factor density matrix: the output vector is reshaped to a
    (d^2, d) matrix M over (clone pair, ancilla), and rho_out = M M^dag.
    """
    d = machine.d
    if psi.dims != (d,):
        raise DimensionError(f"input must be a single factor of dimension {d}, got dims {psi.dims}")
    psi.require_normalized()
    out = machine.isometry @ psi.amps
    m = out.reshape(d * d, d)
    return DensityMatrix((d, d), m @ m.conj().T)


def reduced_clone(rho_out: DensityMatrix) -> DensityMatrix:
    """Single-clone reduction of a two-clone output (traces the second factor).

    The two clones are symmetric, so which factor is traced is immaterial;
    tracing the second is fixed here and the symmetry is asserted in tests.
    """
    if len(rho_out.dims) != 2 or rho_out.dims[0] != rho_out.dims[1]:
        raise DimensionError(f"expected a two-clone state with equal factors, got dims {rho_out.dims}")
    return partial_trace(rho_out, keep=(0,))


def fidelity_closed_form(d: int, alpha: float, beta: float) -> float:
    """F = 1/d + alpha*beta*sqrt(2(d-1))/d + beta^2 (d-2)/(2d)."""
    return 1.0 / d + alpha * beta * math.sqrt(2.0 * (d - 1)) / d + beta * beta * (d - 2) / (2.0 * d)


def optimal_params(d: int) -> tuple[float, float]:
    """The maximizing (alpha, beta) pair.

    alpha = sqrt(1/2 - (d-2) / (2 sqrt(d^2+4d-4))), beta the complementary
    root; alpha <= beta with equality only at d = 2.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    shift = (d - 2) / (2.0 * math.sqrt(d * d + 4.0 * d - 4.0))
    return math.sqrt(0.5 - shift), math.sqrt(0.5 + shift)


def optimal_fidelity(d: int) -> float:
    """F_opt(d) = 1/d + (d - 2 + sqrt(d^2 + 4d - 4)) / (4d)."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return 1.0 / d + (d - 2 + math.sqrt(d * d + 4.0 * d - 4.0)) / (4.0 * d)


def uqcm_fidelity(d: int) -> float:
    """Universal-cloner baseline (d+3) / (2(d+1)), the bar the phase cloner beats."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return (d + 3.0) / (2.0 * (d + 1.0))


def shrink_factor(d: int, alpha: float, beta: float) -> float:
    """eta such that rho_red = eta * rho_in + (1 - eta)/d * I for every phase state.

    eta = d*c with c the off-diagonal coefficient of the reduced output:
    eta = alpha*beta*sqrt(2/(d-1)) + beta^2 (d-2) / (2(d-1)).
    """
    return alpha * beta * math.sqrt(2.0 / (d - 1)) + beta * beta * (d - 2) / (2.0 * (d - 1))


def simulate_fidelity(machine: CloningMachine, psi: Ket) -> float:
    """Brute-force fidelity: run the machine, reduce to one clone, overlap with the input."""
    return fidelity_pure(psi, reduced_clone(clone_state(machine, psi)))


def fidelity_report(
    d: int,
    alpha: float | None = None,
    beta: float | None = None,
    phase_seed: int = 0,
) -> FidelityReport:
    """Build one verified fidelity row; parameters default to the optimum.

    Simulates the machine end-to-end on the phase state drawn with
    ``phase_seed`` and packages the result next to the closed forms. The
    FidelityReport constructor rejects the row if the two routes disagree.
    """
    if (alpha is None) != (beta is None):
        raise ValueError("give both alpha and beta, or neither")
    if alpha is None:
        alpha, beta = optimal_params(d)
    machine = build_machine(d, alpha, beta)
    psi = phase_state(random_phase_vector(d, phase_seed))
    return FidelityReport(
        d=d,
        alpha=machine.alpha,
        beta=machine.beta,
        f_closed=fidelity_closed_form(d, machine.alpha, machine.beta),
        f_simulated=simulate_fidelity(machine, psi),
        f_uqcm=uqcm_fidelity(d),
        eta=shrink_factor(d, machine.alpha, machine.beta),
        phase_seed=phase_seed,
    )
