"""Two-qudit density matrices: GHZ family, random ensembles, file ingestion.

The state file format is JSON::

    {"d": int, "rho": [[[re, im], ...], ...]}

with ``rho`` the row-major d**2 x d**2 matrix and index ``j*d + k`` naming
the product basis vector |j> x |k| (0-based).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidDimension,
    NotHermitian,
    NotPositive,
    TraceNotOne,
    ValidationError,
)
from .numerics import HERMITIAN_ATOL

TRACE_ATOL = 1e-10
POSITIVITY_ATOL = 1e-10


@dataclass(frozen=True)
class TwoQuditState:
    """A validated d**2 x d**2 density matrix for a pair of qudits."""

    dim: int
    rho: np.ndarray


def ghz_state(d: int) -> TwoQuditState:
    """Projector onto the maximally correlated state (1/sqrt(d)) sum_j |jj>."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimension(f"qudit dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    rho = np.zeros((d * d, d * d), dtype=np.complex128)
    diag_idx = [j * d + j for j in range(d)]
    for r in diag_idx:
        for c in diag_idx:
            rho[r, c] = 1.0 / d
    rho.setflags(write=False)
    return TwoQuditState(dim=d, rho=rho)


def random_two_qudit_state(d: int, seed: int) -> TwoQuditState:
    """Ginibre-induced random full-rank state, deterministic per (d, seed)."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimension(f"qudit dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d * d, d * d)) + 1j * rng.standard_normal((d * d, d * d))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return validate_state(rho, d)


def validate_state(rho: np.ndarray, d: int) -> TwoQuditState:
    """Check all density-matrix invariants and return the typed state.

    Raises DimensionMismatch / NotHermitian / TraceNotOne / NotPositive with
    the measured residual in the message.  The stored matrix is the
    symmetrized (rho + rho^dag)/2, which leaves valid inputs unchanged up to
    the Hermiticity tolerance.
    """
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimension(f"qudit dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    m = np.asarray(rho, dtype=np.complex128)
    if m.shape != (d * d, d * d):
        raise DimensionMismatch(
            f"state for d={d} must be {d * d}x{d * d}, got shape {m.shape}"
        )
    if not np.all(np.isfinite(m.view(np.float64))):
        raise NotHermitian("state contains non-finite entries")
    herm_residual = float(np.max(np.abs(m - m.conj().T)))
    if herm_residual > HERMITIAN_ATOL:
        raise NotHermitian(
            f"state is not Hermitian: max |rho - rho^dag| = {herm_residual:.3e}"
        )
    m = 0.5 * (m + m.conj().T)
    trace_residual = abs(np.trace(m).real - 1.0)
    if trace_residual > TRACE_ATOL:
        raise TraceNotOne(f"state trace deviates from 1 by {trace_residual:.3e}")
    min_eig = float(np.linalg.eigvalsh(m)[0])
    if min_eig < -POSITIVITY_ATOL:
        raise NotPositive(f"state has minimum eigenvalue {min_eig:.3e}")
    m.setflags(write=False)
    return TwoQuditState(dim=d, rho=m)


def state_to_json_dict(state: TwoQuditState) -> dict:
    """Serializable dict in the state file format."""
    rho = state.rho
    return {
        "d": state.dim,
        "rho": [[[float(z.real), float(z.imag)] for z in row] for row in rho],
    }


def load_state_file(path: str, d: int | None = None) -> TwoQuditState:
    """Read and validate a state file; d is inferred from the file if omitted."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read state file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"state file {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "d" not in payload or "rho" not in payload:
        raise ValidationError(f'state file {path} must contain keys "d" and "rho"')
    file_d = payload["d"]
    if not isinstance(file_d, int) or file_d < 2:
        raise InvalidDimension(f'state file {path} has invalid "d": {file_d!r}')
    if d is not None and d != file_d:
        raise DimensionMismatch(
            f"requested d={d} but state file declares d={file_d}"
        )
    try:
        raw = np.asarray(payload["rho"], dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise ValidationError(f'state file {path} has malformed "rho": {exc}') from exc
    if raw.ndim != 3 or raw.shape[2] != 2:
        raise ValidationError(
            f'state file {path}: "rho" must be a matrix of [re, im] pairs, '
            f"got array shape {raw.shape}"
        )
    rho = raw[:, :, 0] + 1j * raw[:, :, 1]
    return validate_state(rho, file_d)
