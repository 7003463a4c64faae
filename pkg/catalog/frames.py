"""
Complex frames for real structures.

For each conjugate pair (a, b) of real indices the frame uses
f_a = (e_a + i e_b)/√2 and f_b = (e_a − i e_b)/√2; every other index keeps
f_c = e_c.  Frame coefficients of a real structure satisfy
conj(Γ_ij^k) = Γ_σ(i)σ(j)^σ(k), σ swapping each pair.

The unnormalised pairing z = e_a + i e_b with e^a − i e^b scales each
coefficient whose indices all lie in the pair by 2√2, so a value of 2√2
there is 1 here.
"""
from typing import Iterable, Mapping, Optional

import numpy as np

from config.tolerances import DEFAULT_TOLERANCES
from geometry.curvature import ricci_split_arrays
from geometry.errors import ConjugationMismatchError, DimensionMismatchError
from geometry.tensors import Christoffel

Pairs = Iterable[tuple[int, int]]


def _conjugation(m: int, pairs: Pairs) -> np.ndarray:
    sigma = np.arange(m)
    for a, b in pairs:
        if not (0 <= a < m and 0 <= b < m) or a == b:
            raise DimensionMismatchError(f"invalid conjugate pair ({a}, {b}) for m={m}")
        sigma[a], sigma[b] = b, a
    return sigma


def frame_matrix(m: int, pairs: Pairs = ((0, 1),)) -> np.ndarray:
    """Columns are the frame vectors f_j in the real basis."""
    frame = np.eye(m, dtype=complex)
    root = 1.0 / np.sqrt(2.0)
    for a, b in pairs:
        frame[:, a] = 0.0
        frame[:, b] = 0.0
        frame[a, a], frame[b, a] = root, 1j * root
        frame[a, b], frame[b, b] = root, -1j * root
    return frame


def frame_tensor(
    entries: Mapping[tuple[int, int, int], complex],
    m: int,
    pairs: Pairs = ((0, 1),),
    symmetric: bool = True,
    tol: float = 1e-12,
) -> np.ndarray:
    """Complex frame coefficients from 0-based {(i, j, k): Γ_ij^k}.

    Conjugate partners are filled in; supplying a symbol and an inconsistent
    partner raises ConjugationMismatchError.
    """
    pairs = tuple(pairs)
    sigma = _conjugation(m, pairs)
    coeffs = np.zeros((m, m, m), dtype=complex)
    given = np.zeros((m, m, m), dtype=bool)

    def place(index, value):
        if given[index] and abs(coeffs[index] - value) > tol * max(1.0, abs(value)):
            raise ConjugationMismatchError(
                f"symbol {index} = {coeffs[index]} conflicts with its conjugate partner value {value}"
            )
        coeffs[index] = value
        given[index] = True

    for (i, j, k), value in entries.items():
        value = complex(value)
        mirrored = [(i, j, k), (j, i, k)] if symmetric else [(i, j, k)]
        for a, b, c in mirrored:
            place((a, b, c), value)
            place((sigma[a], sigma[b], sigma[c]), value.conjugate())
    return coeffs


def realify(
    coeffs: np.ndarray,
    m: Optional[int] = None,
    pairs: Pairs = ((0, 1),),
) -> Christoffel:
    """Real-basis Christoffel tensor from complex frame coefficients.

    Coefficients written against z = e_a + i e_b and e^a − i e^b are divided
    by 2√2 first.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    m = coeffs.shape[0] if m is None else m
    if coeffs.shape != (m, m, m):
        raise DimensionMismatchError(f"expected shape {(m, m, m)}, got {coeffs.shape}")
    frame = frame_matrix(m, tuple(pairs))
    inverse = np.linalg.inv(frame)
    real_basis = np.einsum("abc,ai,bj,kc->ijk", coeffs, inverse, inverse, frame)
    residue = float(np.abs(real_basis.imag).max())
    if residue > DEFAULT_TOLERANCES.imag_residue * (1.0 + float(np.abs(real_basis).max())):
        raise ConjugationMismatchError(
            f"frame data is not conjugation compatible (imaginary residue {residue:.3e})"
        )
    return Christoffel(real_basis.real)


def complexify(gamma: Christoffel, pairs: Pairs = ((0, 1),)) -> np.ndarray:
    """Frame coefficients of a real structure; inverse of realify."""
    frame = frame_matrix(gamma.m, tuple(pairs))
    inverse = np.linalg.inv(frame)
    return np.einsum("abc,ai,bj,kc->ijk", gamma.coeffs.astype(complex), frame, frame, inverse)


def frame_ricci_split(coeffs: np.ndarray) -> dict[str, np.ndarray]:
    """ρ₁, ρ₂, ω and ρ = ρ₁ − ρ₂ evaluated directly on frame coefficients."""
    rho1, rho2, omega = ricci_split_arrays(np.asarray(coeffs, dtype=complex))
    return {"rho1": rho1, "rho2": rho2, "omega": omega, "rho": rho1 - rho2}
