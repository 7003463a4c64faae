"""
The genericity polynomial and the ξ vector sequence.

With ρ_s invertible, ξ_0 solves ρ_s ξ_0 = ω and ξ_n solves
ρ_s ξ_n = −ρ₂ₛ ξ_{n−1}; these are the coefficients of the Neumann expansion
of (ρ_s + ε ρ₂ₛ)⁻¹ ω.  The tilded vectors ξ̃_n = (ρ̃ ρ₂ₛ)ⁿ ρ̃ ω use the
cofactor matrix ρ̃ in place of the inverse, so they are polynomial in Γ and
satisfy ξ̃_n = (−1)ⁿ det(ρ_s)ⁿ⁺¹ ξ_n.

The polynomial value is det(ρ_s) · det[ξ̃_0 … ξ̃_{m−1}].
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import structlog

from config.tolerances import DEFAULT_TOLERANCES, Tolerances
from geometry.curvature import ricci_split, signature, symmetric_ricci
from geometry.errors import DegenerateRicciError, InconsistentExponentError
from geometry.tensors import Christoffel, LinearMap, TwoTensor, VectorSeq, act

logger = structlog.get_logger()


def cofactor_matrix(form) -> np.ndarray:
    """Adjugate σ̃ with σ σ̃ = det(σ) I, defined for singular σ as well."""
    sigma = form.entries if isinstance(form, TwoTensor) else np.asarray(form, dtype=float)
    m = sigma.shape[0]
    if m == 1:
        return np.ones((1, 1))
    cofactors = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            minor = np.delete(np.delete(sigma, i, axis=0), j, axis=1)
            cofactors[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return cofactors.T


def polynomial_degree(m: int) -> int:
    """Degree of the genericity polynomial in the entries of Γ."""
    return m ** 3 + m ** 2 + m


def _sequence_inputs(gamma: Christoffel) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    split = ricci_split(gamma)
    rho_s = symmetric_ricci(gamma).entries
    rho2_s = split.rho2.symmetrized().entries
    return rho_s, rho2_s, split.omega.components


def xi_tilde_sequence(gamma: Christoffel, n_max: int) -> list[VectorSeq]:
    """ξ̃_0 … ξ̃_{n_max−1}."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rho_s, rho2_s, omega = _sequence_inputs(gamma)
    adjugate = cofactor_matrix(rho_s)
    step = adjugate @ rho2_s
    vector = adjugate @ omega
    sequence = []
    for _ in range(n_max):
        sequence.append(VectorSeq(vector))
        vector = step @ vector
    return sequence


def xi_sequence(gamma: Christoffel, n_max: int) -> list[VectorSeq]:
    """ξ_0 … ξ_{n_max−1} by repeated solves against ρ_s."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rho_s, rho2_s, omega = _sequence_inputs(gamma)
    if signature(TwoTensor(rho_s)).degenerate:
        raise DegenerateRicciError("ξ needs an invertible symmetric Ricci form")
    vector = np.linalg.solve(rho_s, omega)
    sequence = []
    for _ in range(n_max):
        sequence.append(VectorSeq(vector))
        vector = -np.linalg.solve(rho_s, rho2_s @ vector)
    return sequence


# ---------------------------------------------------------------------------
# Genericity polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GenericityReport:
    det_rho_s: float
    xi_tilde: list[VectorSeq]
    poly_value: float
    generic: bool
    tolerance: float   # |poly_value| must exceed this
    degree: int


def generic_poly(gamma: Christoffel, tol: Optional[Tolerances] = None) -> GenericityReport:
    """Evaluate the genericity polynomial.

    The threshold is tol.generic times the Hadamard bound of both determinants
    (product of row norms of ρ_s and of the ξ̃ column norms), so the decision
    does not change when Γ is rescaled.
    """
    tol = tol or DEFAULT_TOLERANCES
    m = gamma.m
    rho_s = symmetric_ricci(gamma).entries
    xi_tilde = xi_tilde_sequence(gamma, m)
    basis = np.column_stack([v.components for v in xi_tilde])

    det_rho_s = float(np.linalg.det(rho_s))
    value = det_rho_s * float(np.linalg.det(basis))
    bound = float(np.prod(np.linalg.norm(rho_s, axis=1)) * np.prod(np.linalg.norm(basis, axis=0)))
    threshold = tol.generic * bound

    return GenericityReport(
        det_rho_s=det_rho_s,
        xi_tilde=xi_tilde,
        poly_value=value,
        generic=abs(value) > threshold,
        tolerance=threshold,
        degree=polynomial_degree(m),
    )


# ---------------------------------------------------------------------------
# Equivariance exponent
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentSurvey:
    m: int
    kappa: int
    reference_kappa: int
    matches_reference: bool
    odd_under_reversal: bool    # the polynomial flips sign when det A < 0
    max_deviation: float
    trials: int


def reference_kappa(m: int) -> int:
    """2c(m) + m + 2 with c(m) = m(m−1)/2 + 1."""
    c = m * (m - 1) // 2 + 1
    return 2 * c + m + 2


def _well_conditioned_sample(m: int, rng: np.random.Generator) -> tuple[Christoffel, float]:
    for _ in range(1000):
        coeffs = rng.normal(size=(m, m, m))
        gamma = Christoffel(0.5 * (coeffs + coeffs.transpose(1, 0, 2)))
        report = generic_poly(gamma)
        if report.tolerance > 0 and abs(report.poly_value) > 1e4 * report.tolerance:
            if np.linalg.cond(symmetric_ricci(gamma).entries) < 1e4:
                return gamma, report.poly_value
    raise RuntimeError(f"no well-conditioned sample found at m={m}")


def _scaled_map(m: int, rng: np.random.Generator) -> LinearMap:
    """Orthogonal times a diagonal in [1.2, 2]; orientation random."""
    q, _ = np.linalg.qr(rng.normal(size=(m, m)))
    if rng.random() < 0.5:
        q[:, 0] = -q[:, 0]
    return LinearMap(q @ np.diag(rng.uniform(1.2, 2.0, size=m)))


def exponent_survey(m: int, trials: int = 100, seed: int = 0, spread: float = 1e-6) -> ExponentSurvey:
    """Measure κ with P(act(A, Γ)) = det(A)^κ P(Γ) over random (A, Γ).

    Trial t draws from default_rng([seed, t]), so any trial can be replayed alone.
    """
    if trials < 10:
        raise ValueError("trials must be at least 10")
    estimates, reversal_signs = [], []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        gamma, value = _well_conditioned_sample(m, rng)
        a = _scaled_map(m, rng)
        det = a.det()
        ratio = generic_poly(act(a, gamma)).poly_value / value
        estimates.append(np.log(abs(ratio)) / np.log(abs(det)))
        if det < 0:
            reversal_signs.append(np.sign(ratio))

    estimates = np.asarray(estimates)
    kappa = int(round(float(np.median(estimates))))
    deviation = float(np.abs(estimates - kappa).max())
    if deviation > spread:
        raise InconsistentExponentError(
            f"exponent estimates at m={m} spread by {deviation:.3e} around {kappa}"
        )

    reference = reference_kappa(m)
    survey = ExponentSurvey(
        m=m,
        kappa=kappa,
        reference_kappa=reference,
        matches_reference=kappa == reference,
        odd_under_reversal=bool(reversal_signs) and all(s < 0 for s in reversal_signs),
        max_deviation=deviation,
        trials=trials,
    )
    logger.info(
        "equivariance_exponent",
        m=m,
        kappa=kappa,
        reference=reference,
        matches=survey.matches_reference,
    )
    return survey


def equivariance_exponent(m: int, trials: int = 100, seed: int = 0) -> int:
    return exponent_survey(m, trials, seed).kappa
