"""
Cyclic Jacobi eigenvalue iteration for real symmetric matrices.
"""
from typing import Optional

import numpy as np
import structlog

from config.tolerances import DEFAULT_TOLERANCES, Tolerances
from geometry.errors import DimensionMismatchError, NonFiniteError

logger = structlog.get_logger()


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    """Apply the Jacobi rotation that zeroes a[p, q], in place."""
    phi = 0.5 * np.arctan2(2.0 * a[p, q], a[q, q] - a[p, p])
    c, s = np.cos(phi), np.sin(phi)

    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q

    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q

    a[p, q] = a[q, p] = 0.0


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigenvalues(matrix, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, ascending.

    Sweeps over the strict upper triangle until the off-diagonal Frobenius norm
    drops below tol.jacobi_offdiag times the norm of the input.
    """
    tol = tol or DEFAULT_TOLERANCES
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteError("matrix has non-finite entries")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    threshold = tol.jacobi_offdiag * float(np.linalg.norm(a))

    sweeps = 0
    while _off_diagonal_norm(a) > threshold and sweeps < tol.jacobi_max_sweeps:
        for p in range(n):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, p, q)
        sweeps += 1

    if sweeps == tol.jacobi_max_sweeps:
        logger.warning("jacobi_sweep_limit", sweeps=sweeps, residual=_off_diagonal_norm(a))
    return np.sort(np.diag(a))
