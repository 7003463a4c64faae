"""
Catalog of named constant structures, each paired with a closed-form Ricci
tensor that is evaluated without the curvature module.

Coefficient tables are written with 1-based keys "ij^k" for Γ_ij^k and are
filled symmetrically in the lower indices.  Complex-frame families use 0-based
frame indices, with conjugate pairs (3μ, 3μ+1).
"""
from enum import Enum
from itertools import product
from typing import Mapping, Optional, Sequence

import numpy as np
import structlog

from catalog.frames import frame_tensor, realify
from geometry.errors import BadParamsError, EmptyListError, UnknownFamilyError
from geometry.tensors import Christoffel, LinearMap, SymForm
from symmetry.lattice import SupportPattern, support_pattern

logger = structlog.get_logger()

ROOT2 = np.sqrt(2.0)


class FamilyId(str, Enum):
    GAMMA2 = "gamma2"
    PLANAR_X = "planar-x"
    MODEL3D = "model3d"
    SPIRAL3D = "spiral3d"
    CHAINED = "chained"
    FAMILY1 = "family1"
    FAMILY2 = "family2"
    FAMILY3 = "family3"
    FAMILY3_S3 = "family3-s3"
    FAMILY3_A4 = "family3-a4"
    FAMILY4A = "family4a"
    FAMILY4B = "family4b"
    THM19_WITNESS = "thm19"


# Accepted parameter lists, shown in error messages and `catalog --help`
PARAMETERS = {
    FamilyId.GAMMA2: "none",
    FamilyId.PLANAR_X: "x (x ≠ 0)",
    FamilyId.MODEL3D: "none",
    FamilyId.SPIRAL3D: "a (a > 0)",
    FamilyId.CHAINED: "ℓ [a_1 … a_ℓ] (ℓ ≥ 2, a_μ > 0 distinct; default a_μ = 1 + μ/10)",
    FamilyId.FAMILY1: "a b c d (ad ≠ 0)",
    FamilyId.FAMILY2: "a b c d (ad ≠ 0)",
    FamilyId.FAMILY3: "a b c d [e f] (default e=1, f=0)",
    FamilyId.FAMILY3_S3: "none",
    FamilyId.FAMILY3_A4: "[branch] (±1, default 1)",
    FamilyId.FAMILY4A: "none",
    FamilyId.FAMILY4B: "a b c d e f g h (det ρ ≠ 0)",
    FamilyId.THM19_WITNESS: "p q (p, q ≥ 1, p + q ≥ 3)",
}


# Descriptive spellings accepted next to the stable names
ALIASES = {
    "trigonal": FamilyId.GAMMA2,
    "noncompact": FamilyId.THM19_WITNESS,
}


def family_from_name(name: str) -> FamilyId:
    if name in ALIASES:
        return ALIASES[name]
    try:
        return FamilyId(name)
    except ValueError:
        known = ", ".join(f.value for f in FamilyId)
        raise UnknownFamilyError(f"unknown family {name!r}; known families: {known}") from None


def _table(m: int, entries: Mapping[str, float]) -> Christoffel:
    """Christoffel tensor from 1-based keys like "13^1"."""
    coeffs = {}
    for key, value in entries.items():
        lower, upper = key.split("^")
        i, j, k = int(lower[0]) - 1, int(lower[1]) - 1, int(upper) - 1
        coeffs[(i, j, k)] = value
    return Christoffel.from_entries(m, coeffs)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BadParamsError(message)


def _arity(family: FamilyId, params: Sequence[float], *allowed: int) -> list[float]:
    values = [float(v) for v in params]
    if len(values) not in allowed:
        raise BadParamsError(
            f"{family.value} takes {PARAMETERS[family]}; got {len(values)} parameter(s)"
        )
    if not all(np.isfinite(values)):
        raise BadParamsError(f"{family.value} parameters must be finite")
    return values


def _nonzero(value: float) -> bool:
    return abs(value) > 1e-12


def _integer(value: float, name: str) -> int:
    _require(float(value).is_integer(), f"{name} must be an integer, got {value}")
    return int(value)


# ---------------------------------------------------------------------------
# Planar and three-dimensional tables
# ---------------------------------------------------------------------------

def _gamma2() -> Christoffel:
    e = 1.0 / ROOT2
    return _table(2, {"11^1": e, "12^2": -e, "22^1": -e})


def _planar_x(x: float) -> Christoffel:
    _require(_nonzero(x), "x = 0 violates the x≠0 requirement")
    return _table(2, {"11^1": x + 1.0 / x, "12^2": x, "22^1": x, "22^2": 1.0})


def _model3d() -> Christoffel:
    return _table(3, {
        "11^1": 2.0, "22^2": 4.0, "33^3": 2.0,
        "11^3": 1.0, "13^1": 1.0, "23^2": 1.0, "22^3": 1.0,
    })


def _family1_entries(a, b, c, d) -> dict:
    return {"12^3": a, "13^1": b, "23^2": c, "33^3": d}


def _family2_entries(a, b, c, d) -> dict:
    return {"11^3": a, "13^1": b, "13^2": c, "22^3": a, "23^1": -c, "23^2": b, "33^3": d}


def _family3(a, b, c, d, e=1.0, f=0.0) -> Christoffel:
    _require(_nonzero(e) or _nonzero(f), "(e, f) = (0, 0) violates the (e,f)≠0 requirement")
    _require(_nonzero(a * d - 2.0 * (e * e + f * f)), "ad − 2(e²+f²) = 0 violates the non-degeneracy requirement")
    _require(_nonzero(b * d - b * b + c * c), "bd − b² + c² = 0 violates the non-degeneracy requirement")
    entries = _family2_entries(a, b, c, d)
    entries.update({"11^1": e, "11^2": -f, "12^1": -f, "12^2": -e, "22^1": -e, "22^2": f})
    return _table(3, entries)


def _a4_point(branch: float) -> tuple[float, float, float, float]:
    _require(branch in (1.0, -1.0), f"branch must be ±1, got {branch}")
    return branch / ROOT2, branch / ROOT2, 0.0, -branch * ROOT2


def _family4b_ricci(a, b, c, d, e, f, g, h) -> np.ndarray:
    return np.array([
        [-2 * b * d + a * (-c + g + h), b * h - d * e - a * f, 0.0],
        [b * h - d * e - a * f, -2 * b * f + e * (c - g + h), 0.0],
        [0.0, 0.0, -c * c - 2 * d * f + c * h + g * (h - g)],
    ])


# ---------------------------------------------------------------------------
# Complex-frame families
# ---------------------------------------------------------------------------

def _spiral_frame_entries(a: float, offset: int = 0) -> dict:
    f1, f2, f3 = offset, offset + 1, offset + 2
    return {
        (f1, f3, f1): a,
        (f2, f3, f2): a,
        (f1, f2, f3): a,
        (f3, f3, f3): (a * a + 1.0) / a,
    }


def _chained_parameters(params: Sequence[float]) -> tuple[int, list[float]]:
    if not params:
        raise BadParamsError(f"chained takes {PARAMETERS[FamilyId.CHAINED]}")
    ell = _integer(params[0], "ℓ")
    _require(ell >= 2, f"ℓ = {ell} violates ℓ ≥ 2")
    if len(params) == 1:
        radii = [1.0 + mu / 10.0 for mu in range(1, ell + 1)]
    else:
        _require(len(params) == ell + 1, f"chained with ℓ = {ell} needs {ell} radii, got {len(params) - 1}")
        radii = [float(a) for a in params[1:]]
    _require(all(a > 0 for a in radii), "every a_μ must be positive")
    _require(len(set(radii)) == len(radii), "the a_μ must be distinct")
    return ell, radii


def _chained_frame(ell: int, radii: Sequence[float]) -> tuple[np.ndarray, tuple]:
    entries = {}
    for mu, a in enumerate(radii):
        entries.update(_spiral_frame_entries(a, 3 * mu))
        following = 3 * ((mu + 1) % ell)
        entries[(3 * mu, 3 * mu, following)] = 1.0
    pairs = tuple((3 * mu, 3 * mu + 1) for mu in range(ell))
    return frame_tensor(entries, 3 * ell, pairs), pairs


def frame_coefficients(family: FamilyId, params: Sequence[float] = ()) -> tuple[np.ndarray, tuple]:
    """Complex frame coefficients and conjugate pairs of spiral3d or chained."""
    family = FamilyId(family)
    if family is FamilyId.SPIRAL3D:
        (a,) = _arity(family, params, 1)
        _require(a > 0, f"a = {a} violates a > 0")
        return frame_tensor(_spiral_frame_entries(a), 3), ((0, 1),)
    if family is FamilyId.CHAINED:
        return _chained_frame(*_chained_parameters(params))
    raise UnknownFamilyError(f"{family.value} has no complex frame description")


def frame_support_pattern(family: FamilyId, params: Sequence[float] = ()) -> SupportPattern:
    """Support of the complex frame coefficients, where the chained symmetry is diagonal."""
    coeffs, _ = frame_coefficients(family, params)
    return support_pattern(coeffs)


def chained_symmetry(ell: int) -> LinearMap:
    """Real form of T with T f_{1,μ} = λ_μ f_{1,μ}, λ_{μ+1} = λ_μ², λ_0 = exp(2πi/(2^ℓ−1))."""
    if ell < 2:
        raise BadParamsError(f"ℓ = {ell} violates ℓ ≥ 2")
    order = 2 ** ell - 1
    matrix = np.eye(3 * ell)
    for mu in range(ell):
        theta = 2.0 * np.pi * 2 ** mu / order
        c, s = np.cos(theta), np.sin(theta)
        x = 3 * mu
        matrix[x:x + 2, x:x + 2] = [[c, s], [-s, c]]
    return LinearMap(matrix)


def _chained_ricci(ell: int, radii: Sequence[float]) -> np.ndarray:
    rho = np.zeros((3 * ell, 3 * ell))
    for mu, a in enumerate(radii):
        x = 3 * mu
        rho[x:x + 3, x:x + 3] = np.diag([a * a + 1.0, a * a + 1.0, 2.0])
    if ell == 2:
        # The two wrap-around symbols pair with each other.
        rho[0, 3] = rho[3, 0] = -1.0
        rho[1, 4] = rho[4, 1] = 1.0
    return rho


# ---------------------------------------------------------------------------
# Non-compact isotropy witness
# ---------------------------------------------------------------------------

_SEARCH_VALUES = (1.0, 2.0, 3.0, -1.0)


def noncompact_parameters(p: int, q: int) -> tuple[tuple[float, float, float, float], list[float]]:
    """Base (a, b, c, d) and the diagonal extension values ε_u for signature (p, q).

    The base block has one timelike and one spacelike direction from ad plus
    a third entry t = −b² + bd + c(d − c) of the sign still needed; each extra
    direction u contributes (b + c + d) ε_u = ±1.
    """
    if p < 1 or q < 1 or p + q < 3:
        raise BadParamsError(f"(p, q) = ({p}, {q}) violates p ≥ 1, q ≥ 1, p + q ≥ 3")
    want_positive = q >= 2
    for b, c, d in product(_SEARCH_VALUES, repeat=3):
        t = -b * b + b * d + c * (d - c)
        if abs(t) >= 1 and (t > 0) == want_positive and abs(b + c + d) >= 1:
            break
    else:
        raise BadParamsError(f"no base parameters found for ({p}, {q})")
    scale = b + c + d
    negatives = p - 1 if want_positive else p - 2
    positives = q - 2 if want_positive else q - 1
    eps = [-1.0 / scale] * negatives + [1.0 / scale] * positives
    logger.debug("noncompact_parameters", p=p, q=q, base=(1.0, b, c, d), t=t)
    return (1.0, b, c, d), eps


def thm19_witness(p: int, q: int) -> Christoffel:
    """Structure of signature (p, q) fixed by diag(α, 1/α, 1, …, 1) for every α ≠ 0."""
    (a, b, c, d), eps = noncompact_parameters(p, q)
    m = p + q
    entries = {(0, 1, 2): a, (0, 2, 0): b, (1, 2, 1): c, (2, 2, 2): d}
    for offset, value in enumerate(eps):
        u = 3 + offset
        entries[(u, u, 2)] = value
    return Christoffel.from_entries(m, entries)


# ---------------------------------------------------------------------------
# Public constructors
# ---------------------------------------------------------------------------

def build(family: FamilyId, params: Sequence[float] = ()) -> Christoffel:
    """Construct a catalog structure, checking the family's parameter constraints."""
    family = FamilyId(family)
    if family is FamilyId.GAMMA2:
        _arity(family, params, 0)
        gamma = _gamma2()
    elif family is FamilyId.PLANAR_X:
        gamma = _planar_x(*_arity(family, params, 1))
    elif family is FamilyId.MODEL3D:
        _arity(family, params, 0)
        gamma = _model3d()
    elif family in (FamilyId.SPIRAL3D, FamilyId.CHAINED):
        coeffs, pairs = frame_coefficients(family, params)
        gamma = realify(coeffs, pairs=pairs)
    elif family is FamilyId.FAMILY1:
        a, b, c, d = _arity(family, params, 4)
        _require(_nonzero(a * d), "ad = 0 violates the ad≠0 non-degeneracy requirement")
        gamma = _table(3, _family1_entries(a, b, c, d))
    elif family is FamilyId.FAMILY2:
        a, b, c, d = _arity(family, params, 4)
        _require(_nonzero(a * d), "ad = 0 violates the ad≠0 non-degeneracy requirement")
        gamma = _table(3, _family2_entries(a, b, c, d))
    elif family is FamilyId.FAMILY3:
        gamma = _family3(*_arity(family, params, 4, 6))
    elif family is FamilyId.FAMILY3_S3:
        _arity(family, params, 0)
        gamma = _family3(0.0, 0.0, 1.0, 0.0)
    elif family is FamilyId.FAMILY3_A4:
        (branch,) = _arity(family, params, 0, 1) or [1.0]
        gamma = _family3(*_a4_point(branch))
    elif family is FamilyId.FAMILY4A:
        _arity(family, params, 0)
        gamma = _table(3, {"12^3": 1.0, "13^2": 1.0, "23^1": -1.0})
    elif family is FamilyId.FAMILY4B:
        values = _arity(family, params, 8)
        rho = _family4b_ricci(*values)
        scale = max(1.0, float(np.abs(rho).max()))
        _require(abs(np.linalg.det(rho)) > 1e-12 * scale ** 3, "det ρ = 0 violates the det(ρ)≠0 requirement")
        a, b, c, d, e, f, g, h = values
        gamma = _table(3, {
            "11^3": a, "12^3": b, "13^1": c, "13^2": d,
            "22^3": e, "23^1": f, "23^2": g, "33^3": h,
        })
    else:
        p, q = _arity(family, params, 2)
        gamma = thm19_witness(_integer(p, "p"), _integer(q, "q"))
    logger.debug("family_built", family=family.value, params=list(params), m=gamma.m)
    return gamma


def expected_ricci(family: FamilyId, params: Sequence[float] = ()) -> SymForm:
    """Closed-form Ricci tensor of a catalog structure."""
    family = FamilyId(family)
    if family is FamilyId.GAMMA2:
        _arity(family, params, 0)
        return SymForm(-np.eye(2))
    if family is FamilyId.PLANAR_X:
        (x,) = _arity(family, params, 1)
        _require(_nonzero(x), "x = 0 violates the x≠0 requirement")
        return SymForm(np.eye(2))
    if family is FamilyId.MODEL3D:
        _arity(family, params, 0)
        return SymForm(2.0 * np.eye(3))
    if family is FamilyId.SPIRAL3D:
        (a,) = _arity(family, params, 1)
        _require(a > 0, f"a = {a} violates a > 0")
        return SymForm(np.diag([a * a + 1.0, a * a + 1.0, 2.0]))
    if family is FamilyId.CHAINED:
        return SymForm(_chained_ricci(*_chained_parameters(params)))
    if family is FamilyId.FAMILY1:
        a, b, c, d = _arity(family, params, 4)
        _require(_nonzero(a * d), "ad = 0 violates the ad≠0 non-degeneracy requirement")
        rho = np.zeros((3, 3))
        rho[0, 1] = rho[1, 0] = a * d
        rho[2, 2] = -b * b + b * d + c * (d - c)
        return SymForm(rho)
    if family is FamilyId.FAMILY2:
        a, b, c, d = _arity(family, params, 4)
        _require(_nonzero(a * d), "ad = 0 violates the ad≠0 non-degeneracy requirement")
        return SymForm(np.diag([a * d, a * d, 2.0 * (b * d - b * b + c * c)]))
    if family in (FamilyId.FAMILY3, FamilyId.FAMILY3_S3, FamilyId.FAMILY3_A4):
        if family is FamilyId.FAMILY3:
            values = _arity(family, params, 4, 6)
        elif family is FamilyId.FAMILY3_S3:
            _arity(family, params, 0)
            values = [0.0, 0.0, 1.0, 0.0]
        else:
            (branch,) = _arity(family, params, 0, 1) or [1.0]
            values = list(_a4_point(branch))
        a, b, c, d = values[:4]
        e, f = values[4:] if len(values) == 6 else (1.0, 0.0)
        planar = a * d - 2.0 * (e * e + f * f)
        return SymForm(np.diag([planar, planar, 2.0 * (b * d - b * b + c * c)]))
    if family is FamilyId.FAMILY4A:
        _arity(family, params, 0)
        return SymForm(np.diag([-2.0, 2.0, 2.0]))
    if family is FamilyId.FAMILY4B:
        return SymForm(_family4b_ricci(*_arity(family, params, 8)))
    p, q = (_integer(v, name) for v, name in zip(_arity(family, params, 2), "pq"))
    (a, b, c, d), eps = noncompact_parameters(p, q)
    rho = np.zeros((p + q, p + q))
    rho[0, 1] = rho[1, 0] = a * d
    rho[2, 2] = -b * b + b * d + c * (d - c)
    for offset, value in enumerate(eps):
        rho[3 + offset, 3 + offset] = (b + c + d) * value
    return SymForm(rho)


def direct_sum(structures: Sequence[Christoffel]) -> Christoffel:
    """Block-diagonal assembly; coefficients vanish unless all indices share a block."""
    if not structures:
        raise EmptyListError("direct_sum needs at least one structure")
    m = sum(g.m for g in structures)
    coeffs = np.zeros((m, m, m))
    start = 0
    for gamma in structures:
        stop = start + gamma.m
        coeffs[start:stop, start:stop, start:stop] = gamma.coeffs
        start = stop
    return Christoffel(coeffs)


def random_params(family: FamilyId, rng: np.random.Generator) -> list[float]:
    """A parameter list accepted by build(), drawn from *rng*."""
    family = FamilyId(family)
    if family in (FamilyId.GAMMA2, FamilyId.MODEL3D, FamilyId.FAMILY3_S3, FamilyId.FAMILY4A):
        return []
    for _ in range(1000):
        if family is FamilyId.FAMILY3_A4:
            params = [float(rng.choice([1.0, -1.0]))]
        elif family is FamilyId.PLANAR_X:
            params = [float(rng.uniform(0.2, 3.0) * rng.choice([1.0, -1.0]))]
        elif family is FamilyId.SPIRAL3D:
            params = [float(rng.uniform(0.2, 3.0))]
        elif family is FamilyId.CHAINED:
            ell = int(rng.integers(2, 5))
            params = [float(ell), *rng.uniform(0.3, 3.0, size=ell).tolist()]
        elif family is FamilyId.THM19_WITNESS:
            p, q = (int(v) for v in rng.integers(1, 5, size=2))
            if not 3 <= p + q <= 6:
                continue
            params = [float(p), float(q)]
        else:
            count = {FamilyId.FAMILY3: 6, FamilyId.FAMILY4B: 8}.get(family, 4)
            params = rng.uniform(-2.0, 2.0, size=count).tolist()
        try:
            build(family, params)
        except BadParamsError:
            continue
        return params
    raise RuntimeError(f"could not draw valid parameters for {family.value}")


def describe(family: FamilyId, params: Optional[Sequence[float]] = None) -> dict:
    """Metadata recorded alongside a built structure."""
    return {"family": FamilyId(family).value, "params": [float(v) for v in (params or [])]}
