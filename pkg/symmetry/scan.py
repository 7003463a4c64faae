"""
Multi-start search for finite symmetries.

Γ is first brought to Γ' = act(S, Γ) with S = ricci_normalizer(Γ), so every
symmetry of Γ' lies in SO(η) with η = diag(−1…, +1…).  Each component of SO(η)
is charted as B = J expm(Σ x_n X_n) over a basis X_n of so(η); a symmetry of Γ
is then A = S B S⁻¹.  The search is sound (every result is verified) but not
guaranteed complete.
"""
from typing import Optional

import numpy as np
import scipy.linalg
import scipy.optimize
import structlog

from config.tolerances import DEFAULT_TOLERANCES, SCAN_RESTARTS, Tolerances
from geometry.curvature import signature, symmetric_ricci
from geometry.errors import DegenerateRicciError
from geometry.tensors import Christoffel, LinearMap, act
from symmetry.elements import order_of
from symmetry.normalize import canonical_form, ricci_normalizer

logger = structlog.get_logger()


def _isotropy_generators(p: int, q: int) -> list[tuple[np.ndarray, bool]]:
    """Basis η(E_ab − E_ba) of so(η), each flagged compact (rotation) or not (boost)."""
    m = p + q
    eta = canonical_form(p, q)
    generators = []
    for a in range(m):
        for b in range(a + 1, m):
            unit = np.zeros((m, m))
            unit[a, b], unit[b, a] = 1.0, -1.0
            generators.append((eta @ unit, (a < p) == (b < p)))
    return generators


def _component_representatives(p: int, q: int) -> list[np.ndarray]:
    m = p + q
    if p == 0 or q == 0:
        return [np.eye(m)]
    flip = np.eye(m)
    flip[0, 0] = flip[p, p] = -1.0
    return [np.eye(m), flip]


def _initial_point(rng: np.random.Generator, compact: list[bool]) -> np.ndarray:
    return np.array([rng.uniform(-np.pi, np.pi) if c else rng.normal(0.0, 0.5) for c in compact])


def finite_symmetry_scan(
    gamma: Christoffel,
    restarts: int = SCAN_RESTARTS,
    seed: int = 0,
    tol: Optional[Tolerances] = None,
) -> list[LinearMap]:
    """Distinct verified symmetries of Γ found from *restarts* starts per component.

    Results are sorted lexicographically by entries (identity included when
    found) and deduplicated in max-norm.
    """
    tol = tol or DEFAULT_TOLERANCES
    sig = signature(symmetric_ricci(gamma), tol)
    if sig.degenerate:
        raise DegenerateRicciError(f"symmetry scan needs a non-degenerate Ricci form, got {sig}")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")

    normalizer = ricci_normalizer(gamma, tol)
    normalizer_inv = np.linalg.inv(normalizer.entries)
    target = act(normalizer, gamma)
    generators = _isotropy_generators(sig.p, sig.q)
    basis = np.array([g for g, _ in generators])
    compact = [c for _, c in generators]
    accept = tol.scan_residual * (1.0 + gamma.max_abs())

    candidates = []
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        for flip in _component_representatives(sig.p, sig.q):
            x0 = np.zeros(len(basis)) if restart == 0 else _initial_point(rng, compact)

            def chart(x, flip=flip):
                return flip @ scipy.linalg.expm(np.tensordot(x, basis, axes=1))

            def residual(x, chart=chart):
                return (act(chart(x), target).coeffs - target.coeffs).ravel()

            fit = scipy.optimize.least_squares(
                residual, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15
            )
            candidate = LinearMap(normalizer.entries @ chart(fit.x) @ normalizer_inv)
            error = np.abs(act(candidate, gamma).coeffs - gamma.coeffs).max()
            if error < accept and candidate.det() > 0:
                candidates.append(candidate.entries)

    candidates.sort(key=lambda e: tuple(np.round(e.ravel(), 6)))
    distinct: list[np.ndarray] = []
    for entries in candidates:
        if all(np.abs(entries - kept).max() > tol.scan_dedup for kept in distinct):
            distinct.append(entries)

    found = [LinearMap(e) for e in distinct]
    logger.info(
        "symmetry_scan_complete",
        restarts=restarts,
        seed=seed,
        found=len(found),
        orders=[order_of(a) for a in found],
    )
    return found
