"""
Finite symmetries: fixed-point tests, element orders, named group elements and
closure of small matrix groups.
"""
from typing import Iterable, Optional

import numpy as np
import scipy.linalg
import structlog

from config.tolerances import DEFAULT_TOLERANCES, MAX_ORDER
from geometry.errors import ZeroParameterError
from geometry.tensors import Christoffel, LinearMap, MatrixLike, TwoTensor, act, as_linear_map

logger = structlog.get_logger()


def is_fixed(a: MatrixLike, gamma: Christoffel, tol: Optional[float] = None) -> bool:
    """True iff det A > 0 and max|act(A, Γ) − Γ| ≤ tol (default 1e-9·(1 + max|Γ|))."""
    a = as_linear_map(a)
    if tol is None:
        tol = DEFAULT_TOLERANCES.fixed * (1.0 + gamma.max_abs())
    moved = act(a, gamma)
    if a.det() <= 0:
        return False
    return bool(np.abs(moved.coeffs - gamma.coeffs).max() <= tol)


def order_of(a: MatrixLike, max_order: int = MAX_ORDER, tol: Optional[float] = None) -> Optional[int]:
    """Smallest n ≤ max_order with ‖Aⁿ − I‖_∞ ≤ tol, or None when unbounded."""
    a = as_linear_map(a)
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    tol = DEFAULT_TOLERANCES.order if tol is None else tol
    a.inverse()
    identity = np.eye(a.m)
    power = a.entries.copy()
    for n in range(1, max_order + 1):
        if np.abs(power - identity).max() <= tol:
            return n
        power = power @ a.entries
    return None


# ---------------------------------------------------------------------------
# Named elements
# ---------------------------------------------------------------------------

def rotation_3d(theta: float) -> LinearMap:
    """Rotation in the e1-e2 plane, fixing e3."""
    c, s = np.cos(theta), np.sin(theta)
    return LinearMap([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])


def rotation_2d(theta: float) -> LinearMap:
    c, s = np.cos(theta), np.sin(theta)
    return LinearMap([[c, s], [-s, c]])


def hyperbolic(alpha: float, m: int = 3) -> LinearMap:
    """diag(α, 1/α, 1, …, 1)."""
    if alpha == 0:
        raise ZeroParameterError("hyperbolic scaling needs a nonzero parameter")
    diagonal = np.ones(m)
    diagonal[0], diagonal[1] = alpha, 1.0 / alpha
    return LinearMap(np.diag(diagonal))


def sign_flip(axis: int, m: int = 3) -> LinearMap:
    """S_j e_i = e_i if i == j else −e_i, with 1-based *axis* j."""
    if not 1 <= axis <= m:
        raise ValueError(f"axis must lie in 1..{m}")
    diagonal = -np.ones(m)
    diagonal[axis - 1] = 1.0
    return LinearMap(np.diag(diagonal))


def a4_reflection(branch: int = 1) -> LinearMap:
    """Order-2 partner of the 2π/3 rotation generating a₄.

    S e1 = x e1 + y e3, S e2 = −e2, S e3 = y e1 − x e3 with x = 1/3 and
    y = −branch·2√2/3.
    """
    x, y = 1.0 / 3.0, -branch * 2.0 * np.sqrt(2.0) / 3.0
    return LinearMap([[x, 0.0, y], [0.0, -1.0, 0.0], [y, 0.0, -x]])


# ---------------------------------------------------------------------------
# Group closure
# ---------------------------------------------------------------------------

def _contains(elements: list[np.ndarray], candidate: np.ndarray, tol: float) -> bool:
    return any(np.abs(candidate - e).max() <= tol for e in elements)


def generate_group(
    generators: Iterable[MatrixLike],
    max_size: int = 512,
    tol: float = 1e-9,
) -> list[LinearMap]:
    """Close a set of invertible matrices under multiplication (identity first)."""
    gens = [as_linear_map(g).entries for g in generators]
    if not gens:
        raise ValueError("at least one generator is required")
    elements = [np.eye(gens[0].shape[0])]
    frontier = list(elements)
    while frontier:
        next_frontier = []
        for element in frontier:
            for gen in gens:
                product = element @ gen
                if not _contains(elements, product, tol):
                    elements.append(product)
                    next_frontier.append(product)
                    if len(elements) > max_size:
                        raise ValueError(f"generated group exceeds {max_size} elements")
        frontier = next_frontier
    return [LinearMap(e) for e in elements]


def exceptional_group_elements(which: str, branch: int = 1) -> list[LinearMap]:
    """The six elements of s3 or the twelve of a4, as 3×3 matrices."""
    rotation = rotation_3d(2.0 * np.pi / 3.0)
    if which == "s3":
        partner = LinearMap(np.diag([1.0, -1.0, -1.0]))
    elif which == "a4":
        partner = a4_reflection(branch)
    else:
        raise ValueError(f"unknown exceptional group {which!r}; expected 's3' or 'a4'")
    group = generate_group([rotation, partner])
    logger.debug("exceptional_group", which=which, size=len(group))
    return group


def fixed_axis(a: MatrixLike, form: TwoTensor, tol: float = 1e-8) -> np.ndarray:
    """A unit vector v with A v = v and form(v, v) ≠ 0."""
    a = as_linear_map(a)
    fixed = scipy.linalg.null_space(a.entries - np.eye(a.m), rcond=tol)
    if fixed.shape[1] == 0:
        raise ValueError("map has no fixed vector")
    gram = fixed.T @ form.entries @ fixed
    values, vectors = np.linalg.eigh(0.5 * (gram + gram.T))
    index = int(np.argmax(np.abs(values)))
    if abs(values[index]) <= tol * max(1.0, float(np.abs(form.entries).max())):
        raise ValueError("every fixed vector is null for this form")
    axis = fixed @ vectors[:, index]
    return axis / np.linalg.norm(axis)
