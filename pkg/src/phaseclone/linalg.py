"""Dense complex linear algebra for small multi-qudit systems (d <= 64).

Tensor index convention (row-major, fixed across the whole package): for a
composite system with factor dimensions ``(d0, d1, ..., dn)``, the basis
state ``|i0 i1 ... in>`` sits at flat index ``((i0*d1 + i1)*d2 + ...)``,
exactly the ordering produced by ``numpy.kron``. Every partial trace and
every isometry in the package assumes this layout.

Tolerances: ``EQ_TOL`` (1e-12) for equality-style checks, ``PSD_TOL``
(1e-10) for eigenvalue positivity, which is checked by Hermitian
eigendecomposition so that tiny negative round-off eigenvalues pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EQ_TOL = 1e-12
PSD_TOL = 1e-10


class DimensionError(ValueError):
    """Shape or factor-dimension mismatch between operands."""


def _as_locked_array(values, shape_len: int) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True)
    if arr.ndim != shape_len:
        raise DimensionError(f"expected a {shape_len}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_dims(dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise DimensionError(f"factor dimensions must all be >= 2, got {dims}")
    return dims


@dataclass(frozen=True)
class Ket:
    """Pure state of one or more qudits: factor dimensions plus amplitudes.

    The amplitude vector has length ``prod(dims)`` and is stored read-only;
    a Ket never mutates after construction.
    """

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dims", _check_dims(self.dims))
        amps = _as_locked_array(self.amps, 1)
        if amps.size != self.total_dim:
            raise DimensionError(
                f"amplitude vector of length {amps.size} does not match dims {self.dims}"
            )
        object.__setattr__(self, "amps", amps)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def require_normalized(self, tol: float = EQ_TOL) -> "Ket":
        """Return self if the squared norm is within ``tol`` of 1, else raise."""
        if abs(self.norm() ** 2 - 1.0) > tol:
            raise ValueError(f"state is not normalized: |psi|^2 = {self.norm() ** 2!r}")
        return self


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed state: factor dimensions plus a complex square matrix.

    Construction checks shape only; the physical invariants (Hermitian,
    unit trace, positive semidefinite) are verified by :meth:`validate`,
    which is O(n^3) and therefore opt-in.
    """

    dims: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dims", _check_dims(self.dims))
        mat = _as_locked_array(self.mat, 2)
        n = self.total_dim
        if mat.shape != (n, n):
            raise DimensionError(f"matrix shape {mat.shape} does not match dims {self.dims}")
        object.__setattr__(self, "mat", mat)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def validate(self, tol: float = EQ_TOL, psd_tol: float = PSD_TOL) -> "DensityMatrix":
        """Check Hermiticity, unit trace and positivity; raise ValueError on failure."""
        herm = np.linalg.norm(self.mat - self.mat.conj().T)
        if herm >= tol:
            raise ValueError(f"not Hermitian: ||m - m^dag||_F = {herm!r}")
        tr = np.trace(self.mat)
        if abs(tr - 1.0) > tol:
            raise ValueError(f"trace is {tr!r}, expected 1")
        lo = float(np.linalg.eigvalsh(self.mat).min())
        if lo < -psd_tol:
            raise ValueError(f"not positive semidefinite: min eigenvalue {lo!r}")
        return self


def kron(a, b):
    """Tensor product of two Kets or two DensityMatrices (row-major layout).

    The factor list of the result is the concatenation of the operands'
    factor lists, so downstream code can address factors positionally.
    """
    if isinstance(a, Ket) and isinstance(b, Ket):
        return Ket(a.dims + b.dims, np.kron(a.amps, b.amps))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(a.dims + b.dims, np.kron(a.mat, b.mat))
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def outer(psi: Ket) -> DensityMatrix:
    """Rank-one density matrix |psi><psi| of a normalized Ket."""
    psi.require_normalized()
    return DensityMatrix(psi.dims, np.outer(psi.amps, psi.amps.conj()))


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def trace(m: np.ndarray) -> complex:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"trace needs a square matrix, got shape {m.shape}")
    return complex(np.trace(m))


def frobenius_distance(a, b) -> float:
    """Frobenius norm of the elementwise difference ``||a - b||_F``."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every factor not in ``keep``.

    Args:
        rho: density matrix over factors ``rho.dims``.
        keep: indices of the factors to retain; must be a nonempty proper
            subset of ``range(len(rho.dims))``. Kept factors stay in their
            original order.

    Returns:
        The reduced density matrix over the kept factors. The trace is
        preserved exactly up to round-off.
    """
    n = len(rho.dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or len(keep) >= n:
        raise DimensionError(f"keep={keep} must be a nonempty proper subset of 0..{n - 1}")
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionError(f"keep index out of range for {n} factors: {keep}")

    dims = rho.dims
    tensor = rho.mat.reshape(dims + dims)
    # Pair ket axis s with bra axis s + (remaining ndim // 2); trace from the
    # highest index down so earlier axis numbers stay valid.
    for s in reversed([i for i in range(n) if i not in keep]):
        tensor = np.trace(tensor, axis1=s, axis2=s + tensor.ndim // 2)
    kept_dims = tuple(dims[i] for i in keep)
    side = math.prod(kept_dims)
    return DensityMatrix(kept_dims, tensor.reshape(side, side))


def fidelity_pure(psi: Ket, rho: DensityMatrix) -> float:
    """Overlap <psi|rho|psi> between a normalized pure state and a density matrix.

    The value is returned as a real number; a residual imaginary part larger
    than 1e-12 indicates a malformed (non-Hermitian) input and raises.
    """
    if psi.total_dim != rho.total_dim:
        raise DimensionError(
            f"state dimension {psi.total_dim} does not match matrix side {rho.total_dim}"
        )
    psi.require_normalized()
    value = complex(psi.amps.conj() @ rho.mat @ psi.amps)
    if abs(value.imag) >= 1e-12:
        raise ValueError(f"<psi|rho|psi> has non-negligible imaginary part: {value!r}")
    return value.real
