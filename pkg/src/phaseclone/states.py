"""Input-state families: phase states, symmetric pairs and mutually unbiased bases.

A *phase state* of a d-level system is ``(1/sqrt(d)) * sum_j exp(i*phi_j) |j>``
with the global phase fixed by ``phi_0 = 0``; every amplitude has modulus
``1/sqrt(d)``. The mutually unbiased bases built here (odd prime d only) are
phase states too, which is what makes them cloneable at the optimal fidelity
by the machine in :mod:`phaseclone.cloner`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import EQ_TOL, DimensionError, Ket

TWO_PI = 2.0 * math.pi


class UnsupportedDimensionError(ValueError):
    """Requested construction is not defined for this dimension."""


def is_prime(n: int) -> bool:
    """Trial-division primality check; plenty for d <= 64."""
    if n < 2:
        return False
    for p in range(2, int(math.isqrt(n)) + 1):
        if n % p == 0:
            return False
    return True


@dataclass(frozen=True)
class PhaseVector:
    """The d phase parameters of a phase state, with ``phases[0] == 0``."""

    d: int
    phases: tuple[float, ...]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        phases = tuple(float(p) for p in self.phases)
        if len(phases) != self.d:
            raise ValueError(f"expected {self.d} phases, got {len(phases)}")
        if phases[0] != 0.0:
            raise ValueError(f"phases[0] must be 0, got {phases[0]!r}")
        if any(p < 0.0 or p >= TWO_PI for p in phases):
            raise ValueError("all phases must lie in [0, 2*pi)")
        object.__setattr__(self, "phases", phases)


@dataclass(frozen=True)
class MubLabel:
    """Address of one mutually unbiased basis state: dimension d, basis l, state t."""

    d: int
    l: int
    t: int

    def __post_init__(self):
        _require_odd_prime(self.d)
        if not (0 <= self.l < self.d and 0 <= self.t < self.d):
            raise ValueError(f"basis/state labels must lie in 0..{self.d - 1}, got ({self.l}, {self.t})")


def _require_odd_prime(d: int) -> None:
    if not is_prime(d):
        raise UnsupportedDimensionError(f"d = {d} is not prime; no MUB construction here")
    if d == 2:
        # s_j = j + ... + (d-1) is constant for d = 2, so the exponent
        # construction degenerates to a global phase and cannot produce the
        # +-i basis. Refuse rather than return a wrong basis.
        raise UnsupportedDimensionError("d = 2 is not supported by this MUB construction")


def phase_state(pv: PhaseVector) -> Ket:
    """Equal-modulus superposition ``(1/sqrt(d)) * sum_j exp(i*phi_j) |j>``."""
    amps = np.exp(1j * np.array(pv.phases)) / math.sqrt(pv.d)
    return Ket((pv.d,), amps)


def random_phase_vector(d: int, seed: int) -> PhaseVector:
    """Deterministic random phase vector: ``phases[0] = 0``, the rest uniform on [0, 2*pi).

    The stream is PCG64 keyed by ``seed`` (stable across releases: the
    bit generator is pinned by name, not taken from numpy's default).
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return PhaseVector(d, (0.0, *rng.uniform(0.0, TWO_PI, d - 1)))


def symmetric_pair(d: int, j: int, l: int) -> Ket:
    """Normalized symmetric two-qudit basis state: |jj> if j == l, else (|jl> + |lj>)/sqrt(2)."""
    if not (0 <= j < d and 0 <= l < d):
        raise DimensionError(f"indices ({j}, {l}) out of range for d = {d}")
    amps = np.zeros(d * d, dtype=np.complex128)
    if j == l:
        amps[j * d + j] = 1.0
    else:
        amps[j * d + l] = amps[l * d + j] = 1.0 / math.sqrt(2.0)
    return Ket((d, d), amps)


def mub_state(label: MubLabel) -> Ket:
    """State t of mutually unbiased basis l in odd prime dimension d.

    Amplitude at j is ``omega^(t*(d-j)) * omega^(-l*s_j) / sqrt(d)`` with
    ``omega = exp(2*pi*i/d)`` and ``s_j = j + (j+1) + ... + (d-1)``. The
    exponent is reduced mod d in integer arithmetic before exponentiation,
    so the amplitudes are d-th roots of unity to full precision.
    """
    d, l, t = label.d, label.l, label.t
    omega = np.exp(2j * math.pi / d)
    s = [sum(range(j, d)) for j in range(d)]
    exps = [(t * (d - j) - l * s[j]) % d for j in range(d)]
    amps = omega ** np.array(exps) / math.sqrt(d)
    return Ket((d,), amps)


def mub_basis(d: int, l: int) -> list[Ket]:
    """All d states of mutually unbiased basis l (orthonormal by construction)."""
    return [mub_state(MubLabel(d, l, t)) for t in range(d)]


def standard_basis(d: int) -> list[Ket]:
    """Computational basis e_0 .. e_{d-1}."""
    eye = np.eye(d, dtype=np.complex128)
    return [Ket((d,), eye[j]) for j in range(d)]


def is_unbiased(basis_a: list[Ket], basis_b: list[Ket], tol: float = 1e-10) -> bool:
    """True iff every cross overlap satisfies ``| |<a|b>|^2 - 1/d | < tol``.

    Both arguments are assumed orthonormal bases of the same dimension.
    """
    if not basis_a or not basis_b:
        raise ValueError("bases must be nonempty")
    d = basis_a[0].total_dim
    if any(k.total_dim != d for k in basis_a + basis_b):
        raise DimensionError("all basis states must share one dimension")
    for a in basis_a:
        for b in basis_b:
            overlap = abs(np.vdot(a.amps, b.amps)) ** 2
            if abs(overlap - 1.0 / d) >= tol:
                return False
    return True


def gram_residual(basis: list[Ket]) -> float:
    """Max deviation of the Gram matrix from the identity (orthonormality residual)."""
    g = np.array([[np.vdot(a.amps, b.amps) for b in basis] for a in basis])
    return float(np.abs(g - np.eye(len(basis))).max())


def unbiasedness_residual(basis_a: list[Ket], basis_b: list[Ket]) -> float:
    """Worst ``| |<a|b>|^2 - 1/d |`` over all cross pairs."""
    d = basis_a[0].total_dim
    worst = 0.0
    for a in basis_a:
        for b in basis_b:
            worst = max(worst, abs(abs(np.vdot(a.amps, b.amps)) ** 2 - 1.0 / d))
    return worst


# re-exported for callers that tune their own comparisons
__all__ = [
    "EQ_TOL",
    "MubLabel",
    "PhaseVector",
    "UnsupportedDimensionError",
    "gram_residual",
    "is_prime",
    "is_unbiased",
    "mub_basis",
    "mub_state",
    "phase_state",
    "random_phase_vector",
    "standard_basis",
    "symmetric_pair",
    "unbiasedness_residual",
]
