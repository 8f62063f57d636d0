"""Correlation matrix and the CHSH expectation in both of its forms.

The correlation matrix of a state rho is the real (d**2-1) x (d**2-1) array

    T[i, j] = tr[rho (L_i x L_j)]

with row index i on Alice's side and column index j on Bob's side, so that
``tr[rho (A x B)] = (d/2) <a, T b>`` for observables with coefficient
vectors a, b.  The CHSH operator for settings A1, A2, B1, B2 is
``A1 x (B1 + B2) + A2 x (B1 - B2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ImaginaryResidual, NotInLd
from .numerics import tensor_product
from .representation import GellMannBasis, TracelessObservable
from .states import TwoQuditState

IMAGINARY_ATOL = 1e-10


@dataclass(frozen=True)
class CorrelationMatrix:
    """Real matrix of joint basis-operator expectations for one state."""

    dim: int
    matrix: np.ndarray


@dataclass(frozen=True)
class ChshSettings:
    """Four admissible traceless observables, two per party."""

    a1: TracelessObservable
    a2: TracelessObservable
    b1: TracelessObservable
    b2: TracelessObservable

    def __post_init__(self):
        dims = {obs.dim for obs in self.all}
        if len(dims) != 1:
            raise DimensionMismatch(f"settings mix qudit dimensions {sorted(dims)}")
        for name, obs in zip(("A1", "A2", "B1", "B2"), self.all):
            if not obs.is_admissible():
                raise NotInLd(f"setting {name} has spectrum outside [-1, 1]")

    @property
    def all(self) -> tuple[TracelessObservable, ...]:
        return (self.a1, self.a2, self.b1, self.b2)

    @property
    def dim(self) -> int:
        return self.a1.dim


def correlation_matrix(state: TwoQuditState, basis: GellMannBasis) -> CorrelationMatrix:
    """Joint expectations tr[rho (L_i x L_j)] as a real matrix.

    Raises ImaginaryResidual when any entry has |Im| >= 1e-10, which signals
    an invalid state rather than roundoff.
    """
    if state.dim != basis.dim:
        raise DimensionMismatch(
            f"state has d={state.dim} but basis has d={basis.dim}"
        )
    d = state.dim
    # tr[rho (A x B)] = sum_{ikjl} rho[(i,k),(j,l)] A[j,i] B[l,k]
    r4 = state.rho.reshape(d, d, d, d)
    partial = np.einsum("ikjl,aji->akl", r4, basis.stack)
    entries = np.einsum("akl,blk->ab", partial, basis.stack)
    imag_max = float(np.max(np.abs(entries.imag)))
    if imag_max >= IMAGINARY_ATOL:
        raise ImaginaryResidual(
            f"correlation entries have max |Im| = {imag_max:.3e}, "
            f"state or basis is inconsistent"
        )
    matrix = np.ascontiguousarray(entries.real)
    matrix.setflags(write=False)
    return CorrelationMatrix(dim=d, matrix=matrix)


def chsh_operator(settings: ChshSettings) -> np.ndarray:
    """Bell operator A1 x (B1 + B2) + A2 x (B1 - B2)."""
    a1, a2, b1, b2 = (obs.matrix for obs in settings.all)
    return tensor_product(a1, b1 + b2) + tensor_product(a2, b1 - b2)


def chsh_expectation_direct(state: TwoQuditState, settings: ChshSettings) -> float:
    """Signed CHSH expectation tr[rho B_chsh]; callers take the absolute value."""
    if settings.dim != state.dim:
        raise DimensionMismatch(
            f"settings have d={settings.dim} but state has d={state.dim}"
        )
    value = np.einsum("rc,cr->", state.rho, chsh_operator(settings))
    return float(value.real)


def chsh_expectation_from_correlations(
    correlations: CorrelationMatrix,
    a1: np.ndarray,
    a2: np.ndarray,
    b1: np.ndarray,
    b2: np.ndarray,
) -> float:
    """Signed CHSH expectation (d/2) {<a1, T(b1+b2)> + <a2, T(b1-b2)>}."""
    size = correlations.dim * correlations.dim - 1
    vectors = [np.asarray(v, dtype=np.float64) for v in (a1, a2, b1, b2)]
    for v in vectors:
        if v.shape != (size,):
            raise DimensionMismatch(
                f"coefficient vectors must have length {size}, got shape {v.shape}"
            )
    va1, va2, vb1, vb2 = vectors
    t = correlations.matrix
    return float(
        0.5 * correlations.dim * (va1 @ (t @ (vb1 + vb2)) + va2 @ (t @ (vb1 - vb2)))
    )
