"""
Support patterns and the torsion bound on finite symmetries.

If a symmetry is diagonal with eigenvalues κ_1 … κ_m in some frame, every
nonzero coefficient Γ_ij^k forces κ_i κ_j = κ_k.  Written additively these
relations are the rows e_i + e_j − e_k of an integer matrix; the largest
invariant factor of its Smith normal form bounds the order of such a symmetry.
"""
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import structlog
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from config.tolerances import DEFAULT_TOLERANCES
from geometry.tensors import Christoffel

logger = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class SupportPattern:
    theta: np.ndarray     # bool, shape (m, m, m)

    @property
    def m(self) -> int:
        return self.theta.shape[0]

    def entries(self) -> list[tuple[int, int, int]]:
        return [tuple(int(x) for x in index) for index in np.argwhere(self.theta)]


@dataclass(frozen=True, eq=False)
class RelationLattice:
    m: int
    relations: np.ndarray   # int, one row per support entry

    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries of the Smith normal form (absolute values)."""
        if self.relations.shape[0] == 0:
            return ()
        rows = [[int(x) for x in row] for row in self.relations]
        snf = smith_normal_form(Matrix(rows), domain=ZZ)
        size = min(snf.shape)
        diagonal = [abs(int(snf[n, n])) for n in range(size)]
        return tuple(d for d in diagonal if d != 0)

    def free_rank(self) -> int:
        return self.m - len(self.invariant_factors())


def support_pattern(
    gamma: Union[Christoffel, np.ndarray],
    tol: Optional[float] = None,
) -> SupportPattern:
    """θ_ijk = |Γ_ij^k| > tol · max(1, max|Γ|); accepts complex frame arrays."""
    coeffs = gamma.coeffs if isinstance(gamma, Christoffel) else np.asarray(gamma)
    tol = DEFAULT_TOLERANCES.support if tol is None else tol
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    magnitude = np.abs(coeffs)
    cut = tol * max(1.0, float(magnitude.max()) if magnitude.size else 0.0)
    return SupportPattern(theta=magnitude > cut)


def relation_lattice(pattern: SupportPattern) -> RelationLattice:
    rows = []
    for i, j, k in pattern.entries():
        row = np.zeros(pattern.m, dtype=np.int64)
        row[i] += 1
        row[j] += 1
        row[k] -= 1
        rows.append(row)
    relations = np.array(rows, dtype=np.int64).reshape(len(rows), pattern.m)
    return RelationLattice(m=pattern.m, relations=relations)


def torsion_order_bound(pattern: SupportPattern) -> int:
    """Largest invariant factor of the relation lattice; 1 when there is no torsion."""
    factors = relation_lattice(pattern).invariant_factors()
    bound = max(factors, default=1)
    logger.debug("torsion_bound", m=pattern.m, factors=list(factors), bound=bound)
    return bound
