"""Dense complex-matrix primitives shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype complex128.  All
operations here are pure functions of their (immutable) inputs and are safe
to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NotHermitian

# Absolute entrywise tolerance for accepting a matrix as Hermitian.  Inputs
# within tolerance are symmetrized as (M + M†)/2 before any spectral work.
HERMITIAN_ATOL = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    ``values`` are real and sorted in descending order; ``vectors`` holds the
    matching orthonormal eigenvectors as columns, so that
    ``vectors @ diag(values) @ vectors.conj().T`` reconstructs the input.
    """

    values: np.ndarray
    vectors: np.ndarray


def _require_square(matrix: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise NotHermitian(f"{name} contains non-finite entries")
    return m


def symmetrized_hermitian(matrix: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Check Hermiticity within ``HERMITIAN_ATOL`` and return (M + M†)/2."""
    m = _require_square(matrix, name)
    residual = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if residual > HERMITIAN_ATOL:
        raise NotHermitian(
            f"{name} is not Hermitian: max |M - M^dag| = {residual:.3e} "
            f"exceeds {HERMITIAN_ATOL:.0e}"
        )
    return 0.5 * (m + m.conj().T)


def hermitian_eigendecomposition(matrix: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    m = symmetrized_hermitian(matrix)
    try:
        values, vectors = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc
    # eigh returns ascending order; the contract is descending by value.
    return EigenDecomposition(values=values[::-1].copy(), vectors=vectors[:, ::-1].copy())


def operator_norm(matrix: np.ndarray) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix."""
    m = symmetrized_hermitian(matrix)
    values = np.linalg.eigvalsh(m)
    return float(max(abs(values[0]), abs(values[-1])))


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two equally sized square matrices.

    The result is indexed row-major so that entry ``(i*d + k, j*d + l)``
    equals ``a[i, j] * b[k, l]``.
    """
    ma = _require_square(a, "first factor")
    mb = _require_square(b, "second factor")
    if ma.shape != mb.shape:
        raise DimensionMismatch(
            f"tensor factors must have equal dimension, got {ma.shape[0]} and {mb.shape[0]}"
        )
    return np.kron(ma, mb)


def trace_inner_product(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt pairing tr[AB] of two square matrices."""
    ma = _require_square(a, "first argument")
    mb = _require_square(b, "second argument")
    if ma.shape != mb.shape:
        raise DimensionMismatch(
            f"trace inner product needs equal dimensions, got {ma.shape[0]} and {mb.shape[0]}"
        )
    return complex(np.einsum("kl,lk->", ma, mb))
