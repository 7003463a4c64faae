"""
Curvature of a constant connection: the curvature operator, the Ricci tensor
and its split into ρ₁ − ρ₂, symmetrization and signature.

With constant Γ the derivative terms vanish, so everything here is a
quadratic contraction of the coefficient array.
"""
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg
import structlog

from config.tolerances import DEFAULT_TOLERANCES, Tolerances
from geometry.eigen import jacobi_eigenvalues
from geometry.errors import DegenerateRicciError, NonFiniteError
from geometry.tensors import Christoffel, CovectorField, Signature, SymForm, TwoTensor

logger = structlog.get_logger()


class RicciSplit(NamedTuple):
    rho1: TwoTensor
    rho2: TwoTensor
    omega: CovectorField


def curvature_operator(gamma: Christoffel) -> np.ndarray:
    """R_ijk^l = Γ_in^l Γ_jk^n − Γ_jn^l Γ_ik^n, shape (m, m, m, m)."""
    g = gamma.coeffs
    return np.einsum("inl,jkn->ijkl", g, g) - np.einsum("jnl,ikn->ijkl", g, g)


def ricci_split_arrays(coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(ρ₁, ρ₂, ω) as raw arrays; works for complex frame coefficients too."""
    rho1 = np.einsum("ini,jkn->jk", coeffs, coeffs)
    rho2 = np.einsum("jni,ikn->jk", coeffs, coeffs)
    omega = np.einsum("ijj->i", coeffs)
    return rho1, rho2, omega


def ricci_split(gamma: Christoffel) -> RicciSplit:
    """ρ₁_jk = Γ_in^i Γ_jk^n, ρ₂_jk = Γ_jn^i Γ_ik^n, ω_i = Γ_ij^j."""
    rho1, rho2, omega = ricci_split_arrays(gamma.coeffs)
    return RicciSplit(TwoTensor(rho1), TwoTensor(rho2), CovectorField(omega))


def ricci(gamma: Christoffel) -> TwoTensor:
    rho1, rho2, _ = ricci_split_arrays(gamma.coeffs)
    return TwoTensor(rho1 - rho2)


def symmetric_ricci(gamma: Christoffel) -> SymForm:
    return ricci(gamma).symmetrized()


def eigenvalues(form: TwoTensor, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Ascending eigenvalues of the symmetric part of *form* (cyclic Jacobi)."""
    return jacobi_eigenvalues(form.entries, tol)


def signature(form: TwoTensor, tol: Optional[Tolerances] = None) -> Signature:
    """Count negative (p, timelike) and positive (q, spacelike) eigenvalues.

    An eigenvalue inside the band max(rel * spectral radius, floor) counts as
    zero and makes the form degenerate.
    """
    tol = tol or DEFAULT_TOLERANCES
    if not np.all(np.isfinite(form.entries)):
        raise NonFiniteError("form has non-finite entries")
    values = eigenvalues(form, tol)
    scale = float(np.abs(values).max()) if values.size else 0.0
    band = max(tol.signature_rel * scale, tol.signature_floor)
    p = int(np.sum(values < -band))
    q = int(np.sum(values > band))
    logger.debug("signature_computed", p=p, q=q, band=band)
    return Signature(p=p, q=q, degenerate=p + q < form.m)


def ricci_pencil_spectrum(gamma: Christoffel) -> np.ndarray:
    """Eigenvalues of ρ_s⁻¹ ρ₂ₛ (ρ₂ symmetrized), sorted by real part."""
    sym = symmetric_ricci(gamma).entries
    if signature(SymForm(sym)).degenerate:
        raise DegenerateRicciError("pencil spectrum needs a non-degenerate symmetric Ricci form")
    rho2 = ricci_split(gamma).rho2.symmetrized().entries
    values = scipy.linalg.eigvals(rho2, sym)
    return np.sort_complex(values)
