"""Generalized Gell-Mann basis and the observable/vector correspondence.

For qudit dimension ``d`` the basis consists of the d**2 - 1 traceless
Hermitian generators of SU(d) ordered as: the d(d-1)/2 symmetric pair
operators ``|m><k| + |k><m|`` for 1 <= m < k <= d in lexicographic pair
order, then the antisymmetric pair operators ``-i|m><k| + i|k><m|`` in the
same pair order, then the d - 1 diagonal operators

    sqrt(2 / (l*(l+1))) * (|1><1| + ... + |l><l| - l*|l+1><l+1|),  l = 1..d-1.

They satisfy tr[L_i L_j] = 2 delta_ij.  Basis labels use 1-based
computational-basis indices ("s_1_2", "as_1_2", "diag_1"); storage is
0-based.

A traceless Hermitian observable X with coefficient vector n (components
``n_j = tr[X L_j] / sqrt(2 d)``) satisfies ``X = sqrt(d/2) * (n . L)``.  We
call X *admissible* when its spectrum lies in [-1, 1], and call n admissible
when the operator norm of ``n . L`` is at most sqrt(2/d); the map between
the two sets is one-to-one.  The largest Euclidean norm among admissible
vectors is 1 for even d and sqrt((d-1)/d) for odd d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidDimension,
    NotInLd,
    NotTraceless,
    ZeroVector,
)
from .numerics import operator_norm, symmetrized_hermitian

# Operator-norm slack for admissibility checks; eigenvalue classification
# uses one order of magnitude more (kernel_class), both one order above the
# eigensolver's own error.
MEMBERSHIP_ATOL = 1e-10
EIGENVALUE_CLASS_ATOL = 1e-9
TRACELESS_ATOL = 1e-10


class GellMannBasis:
    """Ordered tuple of the d**2 - 1 generalized Gell-Mann operators.

    Immutable after construction; ``operators[j]`` is the j-th basis matrix
    and ``stack`` holds all of them as one (d**2-1, d, d) array for fast
    contractions.
    """

    def __init__(self, dim: int):
        if not isinstance(dim, (int, np.integer)) or dim < 2:
            raise InvalidDimension(f"qudit dimension must be an integer >= 2, got {dim!r}")
        d = int(dim)
        pairs = [(m, k) for m in range(d) for k in range(m + 1, d)]
        stack = np.zeros((d * d - 1, d, d), dtype=np.complex128)
        labels = []
        idx = 0
        for m, k in pairs:
            stack[idx, m, k] = 1.0
            stack[idx, k, m] = 1.0
            labels.append(f"s_{m + 1}_{k + 1}")
            idx += 1
        for m, k in pairs:
            stack[idx, m, k] = -1.0j
            stack[idx, k, m] = 1.0j
            labels.append(f"as_{m + 1}_{k + 1}")
            idx += 1
        for l in range(1, d):
            scale = np.sqrt(2.0 / (l * (l + 1)))
            for j in range(l):
                stack[idx, j, j] = scale
            stack[idx, l, l] = -l * scale
            labels.append(f"diag_{l}")
            idx += 1
        stack.setflags(write=False)
        self.dim = d
        self.size = d * d - 1
        self.stack = stack
        self.operators = tuple(stack[j] for j in range(self.size))
        self.labels = tuple(labels)

    def __len__(self) -> int:
        return self.size

    def vector_to_matrix(self, components: np.ndarray) -> np.ndarray:
        """Contraction n . L of a coefficient vector with the basis."""
        n = self._check_vector(components)
        return np.einsum("j,jkl->kl", n, self.stack)

    def vector_operator_norm(self, components: np.ndarray) -> float:
        """Operator norm of n . L."""
        return operator_norm(self.vector_to_matrix(components))

    def _check_vector(self, components: np.ndarray) -> np.ndarray:
        n = np.asarray(components, dtype=np.float64)
        if n.shape != (self.size,):
            raise DimensionMismatch(
                f"coefficient vector must have length {self.size}, got shape {n.shape}"
            )
        return n


def build_gellmann_basis(d: int) -> GellMannBasis:
    """Construct the generalized Gell-Mann basis for qudit dimension d."""
    return GellMannBasis(d)


@dataclass(frozen=True)
class TracelessObservable:
    """A traceless Hermitian matrix together with its coefficient vector.

    The two representations are tied by ``matrix = sqrt(d/2) * (coefficients . L)``.
    """

    matrix: np.ndarray
    coefficients: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_admissible(self, atol: float = MEMBERSHIP_ATOL) -> bool:
        """True when the spectrum lies in [-1 - atol, 1 + atol]."""
        return operator_norm(self.matrix) <= 1.0 + atol


def expand_observable(matrix: np.ndarray, basis: GellMannBasis) -> np.ndarray:
    """Coefficient vector of a traceless Hermitian matrix.

    Components are ``n_j = tr[X L_j] / sqrt(2 d)``, so that
    ``sqrt(d/2) * (n . L)`` reproduces X.
    """
    x = symmetrized_hermitian(matrix, "observable")
    if x.shape[0] != basis.dim:
        raise DimensionMismatch(
            f"observable is {x.shape[0]}x{x.shape[0]} but basis has d={basis.dim}"
        )
    trace_residual = abs(complex(np.trace(x)))
    if trace_residual > TRACELESS_ATOL:
        raise NotTraceless(
            f"observable has |trace| = {trace_residual:.3e}, exceeds {TRACELESS_ATOL:.0e}"
        )
    traces = np.einsum("kl,jlk->j", x, basis.stack)
    return np.real(traces) / np.sqrt(2.0 * basis.dim)


def observable_from_coefficients(
    components: np.ndarray, basis: GellMannBasis
) -> TracelessObservable:
    """Observable ``sqrt(d/2) * (n . L)`` for a coefficient vector n."""
    n = basis._check_vector(components)
    matrix = np.sqrt(basis.dim / 2.0) * basis.vector_to_matrix(n)
    matrix.setflags(write=False)
    frozen = n.copy()
    frozen.setflags(write=False)
    return TracelessObservable(matrix=matrix, coefficients=frozen)


def project_to_admissible(components: np.ndarray, basis: GellMannBasis) -> np.ndarray:
    """Rescale a nonzero vector onto the admissible boundary.

    Returns ``sqrt(2/d) * n / ||n . L||_op``, whose contraction has operator
    norm exactly sqrt(2/d).
    """
    n = basis._check_vector(components)
    if not np.any(n):
        raise ZeroVector("cannot project the zero vector")
    norm0 = basis.vector_operator_norm(n)
    return np.sqrt(2.0 / basis.dim) * n / norm0


def is_admissible(
    components: np.ndarray, basis: GellMannBasis, atol: float = MEMBERSHIP_ATOL
) -> bool:
    """Whether ``||n . L||_op <= sqrt(2/d)`` within tolerance."""
    n = basis._check_vector(components)
    return basis.vector_operator_norm(n) <= np.sqrt(2.0 / basis.dim) + atol


def max_admissible_norm(d: int) -> float:
    """Largest Euclidean norm of an admissible vector: 1 (even d) or sqrt((d-1)/d)."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimension(f"qudit dimension must be an integer >= 2, got {d!r}")
    if d % 2 == 0:
        return 1.0
    return float(np.sqrt((d - 1) / d))


def kernel_class(observable: TracelessObservable) -> int | None:
    """Multiplicity of the zero eigenvalue for a {-1, 0, 1}-spectrum observable.

    Returns None when some eigenvalue is not within EIGENVALUE_CLASS_ATOL of
    {-1, 0, 1}; raises NotInLd when the observable is not admissible at all.
    """
    norm = operator_norm(observable.matrix)
    if norm > 1.0 + MEMBERSHIP_ATOL:
        raise NotInLd(f"operator norm {norm:.6f} exceeds 1 + {MEMBERSHIP_ATOL:.0e}")
    values = np.linalg.eigvalsh(symmetrized_hermitian(observable.matrix, "observable"))
    nearest = np.round(values)
    if np.max(np.abs(values - nearest)) > EIGENVALUE_CLASS_ATOL:
        return None
    return int(np.sum(nearest == 0))
