"""
Value types for constant Christoffel tensors, bilinear forms and linear maps,
plus the basis-change action of GL(m) on them.

Storage convention: coeffs[i, j, k] holds Γ_ij^k (two lower indices first,
upper index last, row-major).  A LinearMap stores the image of e_j in column j.
"""
from dataclasses import dataclass
from typing import Mapping, Optional, Union

import numpy as np

from config.tolerances import DEFAULT_TOLERANCES, Tolerances
from geometry.errors import (
    DimensionMismatchError,
    NonFiniteError,
    SingularMapError,
)


def _checked(values, ndim: int, name: str) -> np.ndarray:
    """Copy *values* into a float array, validate shape and finiteness."""
    array = np.array(values, dtype=float)
    if array.ndim != ndim or len(set(array.shape)) != 1:
        raise DimensionMismatchError(
            f"{name} must be a cube of rank {ndim}, got shape {array.shape}"
        )
    if not np.all(np.isfinite(array)):
        raise NonFiniteError(f"{name} has non-finite entries")
    return array


def _freeze(instance, field: str, array: np.ndarray) -> None:
    array.setflags(write=False)
    object.__setattr__(instance, field, array)


# ---------------------------------------------------------------------------
# Christoffel tensors
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Christoffel:
    """Constant coefficients Γ_ij^k of an affine connection on R^m.

    Also used for any tensor of the same shape (torsion, infinitesimal action).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        array = _checked(self.coeffs, 3, "Christoffel coefficients")
        if array.shape[0] < 2:
            raise DimensionMismatchError("dimension must be at least 2")
        _freeze(self, "coeffs", array)

    @property
    def m(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def zeros(cls, m: int) -> "Christoffel":
        return cls(np.zeros((m, m, m)))

    @classmethod
    def from_flat(cls, m: int, values) -> "Christoffel":
        """Build from m³ values in (i, j, k) row-major order."""
        flat = np.asarray(values, dtype=float).ravel()
        if flat.size != m ** 3:
            raise DimensionMismatchError(
                f"expected {m ** 3} coefficients for m={m}, got {flat.size}"
            )
        return cls(flat.reshape(m, m, m))

    @classmethod
    def from_entries(
        cls,
        m: int,
        entries: Mapping[tuple[int, int, int], float],
        symmetric: bool = True,
    ) -> "Christoffel":
        """Build from 0-based {(i, j, k): Γ_ij^k}; *symmetric* also fills (j, i, k)."""
        coeffs = np.zeros((m, m, m))
        for (i, j, k), value in entries.items():
            coeffs[i, j, k] = value
            if symmetric:
                coeffs[j, i, k] = value
        return cls(coeffs)

    def flat(self) -> list[float]:
        return self.coeffs.ravel().tolist()

    def max_abs(self) -> float:
        return float(np.abs(self.coeffs).max())


# ---------------------------------------------------------------------------
# Bilinear forms, vectors, linear maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TwoTensor:
    """Bilinear form with entries[j, k] the coefficient of dx^j ⊗ dx^k."""

    entries: np.ndarray

    def __post_init__(self):
        _freeze(self, "entries", _checked(self.entries, 2, "bilinear form"))

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    def symmetrized(self) -> "SymForm":
        return SymForm(self.entries)


class SymForm(TwoTensor):
    """Symmetric bilinear form; symmetrized exactly on construction."""

    def __post_init__(self):
        array = _checked(self.entries, 2, "symmetric form")
        _freeze(self, "entries", 0.5 * (array + array.T))


@dataclass(frozen=True, eq=False)
class CovectorField:
    """Constant 1-form, e.g. ω_i = Γ_ij^j."""

    components: np.ndarray

    def __post_init__(self):
        _freeze(self, "components", _checked(self.components, 1, "covector"))

    @property
    def m(self) -> int:
        return self.components.shape[0]


@dataclass(frozen=True, eq=False)
class VectorSeq:
    """One vector of the ξ sequence."""

    components: np.ndarray

    def __post_init__(self):
        _freeze(self, "components", _checked(self.components, 1, "vector"))

    @property
    def m(self) -> int:
        return self.components.shape[0]


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Element of GL(m, R); column j is the image of e_j."""

    entries: np.ndarray

    def __post_init__(self):
        _freeze(self, "entries", _checked(self.entries, 2, "linear map"))

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, m: int) -> "LinearMap":
        return cls(np.eye(m))

    def det(self) -> float:
        return float(np.linalg.det(self.entries))

    def inverse(self, tol: Optional[Tolerances] = None) -> "LinearMap":
        tol = tol or DEFAULT_TOLERANCES
        det = self.det()
        if abs(det) <= tol.det:
            raise SingularMapError(f"|det A| = {abs(det):.3e} is below {tol.det:.0e}")
        return LinearMap(np.linalg.inv(self.entries))

    def power(self, n: int) -> "LinearMap":
        return LinearMap(np.linalg.matrix_power(self.entries, n))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        _same_dimension(self.m, other.m)
        return LinearMap(self.entries @ other.entries)


@dataclass(frozen=True)
class Signature:
    """Inertia of a symmetric form.

    p counts NEGATIVE eigenvalues (timelike) and q POSITIVE ones (spacelike),
    so (m, 0) is negative definite.
    """

    p: int
    q: int
    degenerate: bool

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


MatrixLike = Union[LinearMap, np.ndarray, list]


def as_linear_map(value: MatrixLike) -> LinearMap:
    if isinstance(value, LinearMap):
        return value
    return LinearMap(value)


def _same_dimension(left: int, right: int) -> None:
    if left != right:
        raise DimensionMismatchError(f"dimension mismatch: {left} vs {right}")


# ---------------------------------------------------------------------------
# Action and torsion
# ---------------------------------------------------------------------------

def act(a: MatrixLike, gamma: Christoffel, tol: Optional[Tolerances] = None) -> Christoffel:
    """Change of basis (A·Γ)_ij^k = Γ_ab^c A^a_i A^b_j (A⁻¹)^k_c.

    A right action: act(A, act(B, Γ)) == act(B @ A, Γ).
    """
    a = as_linear_map(a)
    _same_dimension(a.m, gamma.m)
    inverse = a.inverse(tol)
    return Christoffel(
        np.einsum("abc,ai,bj,kc->ijk", gamma.coeffs, a.entries, a.entries, inverse.entries)
    )


def act_on_form(a: MatrixLike, form: TwoTensor) -> TwoTensor:
    """Pull back a bilinear form: Aᵀ σ A.  Keeps the input's class."""
    a = as_linear_map(a)
    _same_dimension(a.m, form.m)
    return type(form)(a.entries.T @ form.entries @ a.entries)


def torsion(gamma: Christoffel) -> Christoffel:
    """Γ_ij^k − Γ_ji^k."""
    return Christoffel(gamma.coeffs - gamma.coeffs.transpose(1, 0, 2))


def is_torsion_free(gamma: Christoffel, tol: Optional[float] = None) -> bool:
    tol = DEFAULT_TOLERANCES.symmetry if tol is None else tol
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return bool(np.abs(torsion(gamma).coeffs).max() <= tol)
