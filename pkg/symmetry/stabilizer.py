"""
Infinitesimal stabilizer of a Christoffel tensor.

ξ ∈ gl(m) acts by the derivative of act(exp(tξ), Γ) at t = 0.  The stabilizer
Lie algebra is the null space of the m³ × m² matrix of that linear map, read
off a full singular value decomposition.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import structlog

from config.tolerances import DEFAULT_TOLERANCES
from geometry.errors import DimensionMismatchError
from geometry.tensors import Christoffel

logger = structlog.get_logger()


def _infinitesimal(xi: np.ndarray, g: np.ndarray) -> np.ndarray:
    return (
        np.einsum("ai,ajk->ijk", xi, g)
        + np.einsum("bj,ibk->ijk", xi, g)
        - np.einsum("kc,ijc->ijk", xi, g)
    )


def infinitesimal_action(xi, gamma: Christoffel) -> Christoffel:
    """(ξ·Γ)_ij^k = ξ^a_i Γ_aj^k + ξ^b_j Γ_ib^k − ξ^k_c Γ_ij^c."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (gamma.m, gamma.m):
        raise DimensionMismatchError(
            f"generator shape {xi.shape} does not match dimension {gamma.m}"
        )
    return Christoffel(_infinitesimal(xi, gamma.coeffs))


def action_matrix(gamma: Christoffel) -> np.ndarray:
    """Matrix of ξ ↦ ξ·Γ; column a*m + b is the image of the unit matrix E_ab."""
    m = gamma.m
    columns = []
    for a in range(m):
        for b in range(m):
            unit = np.zeros((m, m))
            unit[a, b] = 1.0
            columns.append(_infinitesimal(unit, gamma.coeffs).ravel())
    return np.column_stack(columns)


@dataclass(frozen=True, eq=False)
class StabilizerReport:
    lie_dimension: int
    lie_basis: list[np.ndarray]       # Frobenius-orthonormal m×m generators
    singular_values: np.ndarray       # descending, length m²
    tol_rank: float

    @property
    def cutoff(self) -> float:
        top = float(self.singular_values[0]) if self.singular_values.size else 0.0
        return self.tol_rank * top

    @property
    def spectral_gap(self) -> float:
        """Smallest kept singular value over the largest discarded one.

        With nothing discarded the cutoff stands in for the denominator; with
        nothing kept the gap is infinite.
        """
        s = self.singular_values
        kept = s[s > self.cutoff]
        if kept.size == 0:
            return float("inf")
        dropped = s[s <= self.cutoff]
        floor = float(dropped.max()) if dropped.size else self.cutoff
        floor = max(floor, np.finfo(float).eps * float(s[0]))
        return float(kept.min()) / floor


def stabilizer_lie_algebra(gamma: Christoffel, tol_rank: Optional[float] = None) -> StabilizerReport:
    tol_rank = DEFAULT_TOLERANCES.rank if tol_rank is None else tol_rank
    if not 0 < tol_rank < 1:
        raise ValueError("tol_rank must lie in (0, 1)")
    m = gamma.m
    _, singular_values, vh = np.linalg.svd(action_matrix(gamma))
    top = float(singular_values[0])
    null = singular_values <= tol_rank * top
    basis = [vh[index].reshape(m, m) for index in np.flatnonzero(null)]
    logger.debug("stabilizer_computed", m=m, dimension=len(basis))
    return StabilizerReport(
        lie_dimension=len(basis),
        lie_basis=basis,
        singular_values=singular_values,
        tol_rank=tol_rank,
    )
