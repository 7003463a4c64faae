"""
Gram–Schmidt for indefinite symmetric forms.

ricci_normalizer returns S with Sᵀ ρ_s S = diag(−1, …, −1, +1, …, +1) and
det S > 0, so act(S, Γ) has the canonical symmetric Ricci form.
"""
from typing import Optional

import numpy as np
import structlog

from config.tolerances import DEFAULT_TOLERANCES, Tolerances
from geometry.curvature import signature, symmetric_ricci
from geometry.errors import DegenerateRicciError
from geometry.tensors import Christoffel, LinearMap, SymForm

logger = structlog.get_logger()

# A pending vector counts as null when |σ(v, v)| is below this times max|σ| |v|²
_NULL_CUT = 1e-9


def _combine_null_pair(pending: list[np.ndarray], sigma: np.ndarray) -> bool:
    """Replace one vector of the best-paired null pair by their sum; False if none pair."""
    best, pair = 0.0, None
    for i in range(len(pending)):
        for j in range(i + 1, len(pending)):
            value = abs(pending[i] @ sigma @ pending[j])
            if value > best:
                best, pair = value, (i, j)
    if pair is None or best <= _NULL_CUT * np.abs(sigma).max():
        return False
    i, j = pair
    pending[i] = pending[i] + pending[j]
    return True


def orthonormal_frame(form: SymForm) -> tuple[np.ndarray, np.ndarray]:
    """Columns v_n with σ(v_a, v_b) = ±δ_ab, timelike (−1) columns first.

    Pivots on the largest |σ(v, v)| among the remaining vectors; when every
    remaining vector is null, a pair with nonzero pairing is merged first.
    """
    sigma = form.entries
    scale = float(np.abs(sigma).max())
    if scale == 0.0:
        raise DegenerateRicciError("form vanishes identically")

    pending = [column for column in np.eye(form.m)]
    vectors, signs = [], []
    while pending:
        norms = np.array([v @ sigma @ v for v in pending])
        lengths = np.array([v @ v for v in pending])
        k = int(np.argmax(np.abs(norms) / lengths))
        if abs(norms[k]) <= _NULL_CUT * scale * lengths[k]:
            if not _combine_null_pair(pending, sigma):
                raise DegenerateRicciError("form is degenerate on the remaining subspace")
            continue
        v = pending.pop(k)
        sign = 1.0 if norms[k] > 0 else -1.0
        v = v / np.sqrt(abs(norms[k]))
        vectors.append(v)
        signs.append(sign)
        pending = [w - sign * (w @ sigma @ v) * v for w in pending]

    order = sorted(range(len(signs)), key=lambda n: signs[n])
    frame = np.column_stack([vectors[n] for n in order])
    return frame, np.array([signs[n] for n in order])


def ricci_normalizer(gamma: Christoffel, tol: Optional[Tolerances] = None) -> LinearMap:
    form = symmetric_ricci(gamma)
    sig = signature(form, tol or DEFAULT_TOLERANCES)
    if sig.degenerate:
        raise DegenerateRicciError(f"symmetric Ricci form is degenerate, signature {sig}")
    frame, signs = orthonormal_frame(form)
    if np.linalg.det(frame) < 0:
        # Negating one column keeps Sᵀρ S; prefer a spacelike one.
        frame[:, -1] = -frame[:, -1]
    logger.debug("ricci_normalized", p=sig.p, q=sig.q)
    return LinearMap(frame)


def canonical_form(p: int, q: int) -> np.ndarray:
    return np.diag([-1.0] * p + [1.0] * q)
