"""
Acceptance ledger behind `affine-moduli verify`.
Checks are registered per scope and run in declaration order; each returns a
pass flag and a short detail string.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np
import structlog

from catalog.structures import (
    FamilyId,
    build,
    chained_symmetry,
    expected_ricci,
    frame_support_pattern,
    random_params,
)
from geometry.curvature import curvature_operator, ricci, ricci_split, signature, symmetric_ricci
from geometry.errors import UnknownScopeError
from geometry.genericity import exponent_survey, generic_poly, xi_sequence, xi_tilde_sequence
from geometry.tensors import Christoffel, LinearMap, SymForm, act, act_on_form, is_torsion_free, torsion
from pipeline.documents import TensorDocument, emit, parse
from symmetry.elements import (
    exceptional_group_elements,
    hyperbolic,
    is_fixed,
    order_of,
    rotation_2d,
    rotation_3d,
    sign_flip,
)
from symmetry.lattice import SupportPattern, relation_lattice, torsion_order_bound
from symmetry.normalize import canonical_form, ricci_normalizer
from symmetry.scan import finite_symmetry_scan
from symmetry.stabilizer import stabilizer_lie_algebra

logger = structlog.get_logger()

SCOPES = ("tensor-core", "curvature", "genericity", "symmetry", "catalog", "cli")

# Random parameter draws per family in the closed-form Ricci comparison
ORACLE_DRAWS = 200

CheckFn = Callable[[np.random.Generator], tuple[bool, str]]


@dataclass(frozen=True)
class Check:
    scope: str
    label: str
    citation: str
    run: CheckFn


@dataclass(frozen=True)
class CheckResult:
    scope: str
    label: str
    citation: str
    passed: bool
    detail: str

    def ledger_line(self) -> str:
        mark = "✓ PASS" if self.passed else "✗ FAIL"
        return f"{mark} [{self.scope}] {self.label} ({self.citation}): {self.detail}"


CHECKS: list[Check] = []


def check(scope: str, label: str, citation: str):
    """Register the decorated check; *citation* names the result it confirms."""
    def register(fn: CheckFn) -> CheckFn:
        CHECKS.append(Check(scope, label, citation, fn))
        return fn
    return register


def _random_gamma(rng: np.random.Generator, m: int, torsion_free: bool = True) -> Christoffel:
    coeffs = rng.normal(size=(m, m, m))
    if torsion_free:
        coeffs = 0.5 * (coeffs + coeffs.transpose(1, 0, 2))
    return Christoffel(coeffs)


def _random_map(rng: np.random.Generator, m: int) -> LinearMap:
    while True:
        a = rng.normal(size=(m, m))
        if abs(np.linalg.det(a)) > 0.1:
            return LinearMap(a)


def _max_error(left, right) -> float:
    return float(np.abs(np.asarray(left) - np.asarray(right)).max())


# ---------------------------------------------------------------------------
# tensor-core
# ---------------------------------------------------------------------------

@check("tensor-core", "basis change is a right action", "§1.5")
def _right_action(rng):
    worst = 0.0
    for _ in range(20):
        a, b, gamma = _random_map(rng, 3), _random_map(rng, 3), _random_gamma(rng, 3, False)
        worst = max(worst, _max_error(act(a, act(b, gamma)).coeffs, act(b @ a, gamma).coeffs))
    return worst < 1e-9, f"max error {worst:.2e}"


@check("tensor-core", "basis change preserves torsion-freeness and commutes with torsion", "§1")
def _torsion_transport(rng):
    worst = 0.0
    for _ in range(20):
        a, gamma = _random_map(rng, 3), _random_gamma(rng, 3, False)
        worst = max(worst, _max_error(torsion(act(a, gamma)).coeffs, act(a, torsion(gamma)).coeffs))
        if not is_torsion_free(act(a, _random_gamma(rng, 3))):
            return False, "torsion appeared after basis change"
    return worst < 1e-10, f"max error {worst:.2e}"


@check("tensor-core", "pullback determinant law", "Thm 1.3 proof")
def _determinant_law(rng):
    worst = 0.0
    for _ in range(20):
        a = _random_map(rng, 3)
        sigma = SymForm(rng.normal(size=(3, 3)))
        expected = a.det() ** 2 * np.linalg.det(sigma.entries)
        worst = max(worst, abs(np.linalg.det(act_on_form(a, sigma).entries) - expected) / max(abs(expected), 1e-300))
    return worst < 1e-9, f"max relative error {worst:.2e}"


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

@check("curvature", "Ricci displays of gamma2, model3d and family4a", "Def 1.10; §2 Case 3; Thm 1.12(4a)")
def _ricci_displays(rng):
    expected = {
        FamilyId.GAMMA2: -np.eye(2),
        FamilyId.MODEL3D: 2.0 * np.eye(3),
        FamilyId.FAMILY4A: np.diag([-2.0, 2.0, 2.0]),
    }
    worst = max(_max_error(ricci(build(f)).entries, rho) for f, rho in expected.items())
    split = ricci_split(build(FamilyId.MODEL3D))
    worst = max(
        worst,
        _max_error(split.rho2.entries, [[6, 0, 2], [0, 18, 4], [2, 4, 6]]),
        _max_error(split.omega.components, [2, 4, 4]),
    )
    return worst < 1e-12, f"max error {worst:.2e}"


@check("curvature", "split identity and curvature trace", "Eq 1.a, 1.b, 2.a")
def _split_identity(rng):
    worst = 0.0
    for _ in range(20):
        gamma = _random_gamma(rng, 3, False)
        split = ricci_split(gamma)
        rho = ricci(gamma).entries
        worst = max(worst, _max_error(split.rho1.entries - split.rho2.entries, rho))
        worst = max(worst, _max_error(np.einsum("ijki->jk", curvature_operator(gamma)), rho))
    return worst < 1e-12, f"max error {worst:.2e}"


@check("curvature", "symmetric Ricci transports as a pullback; signature is invariant", "§1.4")
def _ricci_equivariance(rng):
    worst = 0.0
    for m in (2, 3, 4):
        for _ in range(10):
            a, gamma = _random_map(rng, m), _random_gamma(rng, m)
            moved = symmetric_ricci(act(a, gamma))
            pulled = act_on_form(a, symmetric_ricci(gamma))
            worst = max(worst, _max_error(moved.entries, pulled.entries))
            if signature(moved) != signature(symmetric_ricci(gamma)):
                return False, f"signature changed at m={m}"
    return worst < 1e-8, f"max error {worst:.2e}"


# ---------------------------------------------------------------------------
# genericity
# ---------------------------------------------------------------------------

@check("genericity", "model3d is generic", "§2 Case 3")
def _model3d_generic(rng):
    gamma = build(FamilyId.MODEL3D)
    report = generic_poly(gamma)
    # Ξ_n = (ρ_s⁻¹ ρ₂)ⁿ ρ_s⁻¹ ω = (−1)ⁿ ξ_n
    xis = [((-1) ** n) * v.components for n, v in enumerate(xi_sequence(gamma, 3))]
    det = float(np.linalg.det(np.column_stack(xis)))
    logger.warning("reference_discrepancy", quantity="model3d xi determinant", computed=det, printed=54)
    ok = report.generic and abs(report.poly_value) > 1e3 * report.tolerance and abs(det) > 0
    return ok, f"P = {report.poly_value:.6g}, xi determinant {det:.6g}"


@check("genericity", "tilded sequence matches the Neumann coefficients", "Eq 2.b")
def _neumann(rng):
    worst = 0.0
    for _ in range(20):
        gamma = _random_gamma(rng, 3)
        det = np.linalg.det(symmetric_ricci(gamma).entries)
        if abs(det) < 0.1:
            continue
        tilde = xi_tilde_sequence(gamma, 3)
        plain = xi_sequence(gamma, 3)
        for n in range(3):
            scaled = (-1) ** n * det ** (n + 1) * plain[n].components
            scale = max(1.0, float(np.abs(scaled).max()))
            worst = max(worst, _max_error(tilde[n].components, scaled) / scale)
    return worst < 1e-8, f"max relative error {worst:.2e}"


@check("genericity", "equivariance exponent for m = 2, 3", "Lemma 2.1(2)")
def _exponent(rng):
    seed = int(rng.integers(2 ** 31))
    details, ok = [], True
    for m in (2, 3):
        survey = exponent_survey(m, trials=20, seed=seed)
        ok = ok and survey.kappa == m * m + m + 1 and survey.odd_under_reversal
        details.append(f"m={m}: κ={survey.kappa} (reference {survey.reference_kappa})")
    return ok, "; ".join(details)


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------

@check("symmetry", "stabilizer dimensions", "Thm 1.7(1); Thm 1.12(1), (2)")
def _stabilizer_dimensions(rng):
    cases = {
        "family1": (build(FamilyId.FAMILY1, [1, 1, 1, 3]), 1),
        "family2": (build(FamilyId.FAMILY2, [1, 1, 1, 3]), 1),
        "model3d": (build(FamilyId.MODEL3D), 0),
        "zero": (Christoffel.zeros(3), 9),
    }
    found = {name: stabilizer_lie_algebra(g).lie_dimension for name, (g, _) in cases.items()}
    ok = all(found[name] == want for name, (_, want) in cases.items())
    return ok, ", ".join(f"{name}={dim}" for name, dim in found.items())


@check("symmetry", "exceptional groups close and fix their structures", "Thm 1.12(3a), (3b)")
def _exceptional(rng):
    details, ok = [], True
    for which, family, size in (("s3", FamilyId.FAMILY3_S3, 6), ("a4", FamilyId.FAMILY3_A4, 12)):
        group = exceptional_group_elements(which)
        gamma = build(family)
        ok = ok and len(group) == size and all(is_fixed(g, gamma) for g in group)
        details.append(f"{which}: {len(group)} elements")
    return ok, ", ".join(details)


@check("symmetry", "chained symmetry orders and torsion bounds", "§3")
def _chained(rng):
    details, ok = [], True
    for ell in (2, 3, 4):
        order = order_of(chained_symmetry(ell))
        bound = torsion_order_bound(frame_support_pattern(FamilyId.CHAINED, [ell]))
        fixed = is_fixed(chained_symmetry(ell), build(FamilyId.CHAINED, [ell]))
        ok = ok and order == bound == 2 ** ell - 1 and fixed
        details.append(f"ℓ={ell}: order {order}, bound {bound}")
    return ok, ", ".join(details)


@check("symmetry", "hand relation lattice has torsion 3", "§3")
def _hand_lattice(rng):
    theta = np.zeros((2, 2, 2), dtype=bool)
    theta[0, 0, 1] = theta[1, 1, 0] = True
    pattern = SupportPattern(theta)
    factors = relation_lattice(pattern).invariant_factors()
    return torsion_order_bound(pattern) == 3, f"invariant factors {factors}"


@check("symmetry", "normalizer reaches the canonical form", "Lemma 4.1")
def _normalizer(rng):
    worst = 0.0
    for _ in range(10):
        gamma = _random_gamma(rng, 3)
        sig = signature(symmetric_ricci(gamma))
        if sig.degenerate:
            continue
        s = ricci_normalizer(gamma)
        worst = max(worst, _max_error(symmetric_ricci(act(s, gamma)).entries, canonical_form(sig.p, sig.q)))
        if s.det() <= 0:
            return False, "normalizer reverses orientation"
    return worst < 1e-9, f"max error {worst:.2e}"


@check("symmetry", "scan recovers the cyclic group of gamma2", "Thm 1.11(2)")
def _scan(rng):
    found = finite_symmetry_scan(build(FamilyId.GAMMA2), restarts=40, seed=int(rng.integers(2 ** 31)))
    orders = sorted(order_of(a) for a in found)
    return orders == [1, 3, 3], f"orders {orders}"


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

@check("catalog", "closed-form Ricci tensors match the curvature module", "Thm 1.12")
def _oracle(rng):
    worst = 0.0
    for family in FamilyId:
        for _ in range(ORACLE_DRAWS):
            params = random_params(family, rng)
            expected = expected_ricci(family, params).entries
            scale = max(1.0, float(np.abs(expected).max()))
            worst = max(worst, _max_error(ricci(build(family, params)).entries, expected) / scale)
    return worst < 1e-9, f"max scaled error {worst:.2e}"


@check("catalog", "every structure is torsion-free", "§1")
def _torsion_free(rng):
    failures = [f.value for f in FamilyId if not is_torsion_free(build(f, random_params(f, rng)))]
    return not failures, ", ".join(failures) or "all families"


@check("catalog", "claimed symmetries and non-symmetries", "Thm 1.12; §7.4; §6")
def _claimed(rng):
    family1 = build(FamilyId.FAMILY1, [1, 1, 1, 3])
    family2 = build(FamilyId.FAMILY2, [1, 1, 1, 3])
    family3 = build(FamilyId.FAMILY3, [1, 1, 1, 3])
    family4a = build(FamilyId.FAMILY4A)
    family4b = build(FamilyId.FAMILY4B, [1, 2, 3, 4, 5, 6, 7, 8])
    third = rotation_3d(2 * np.pi / 3)
    holds = [
        all(is_fixed(hyperbolic(alpha), family1) for alpha in (2.0, -2.0, 1.0 / 3.0)),
        is_fixed(third, family2) and is_fixed(third, family3),
        all(is_fixed(sign_flip(j), family4a) for j in (1, 2, 3)),
        is_fixed(sign_flip(3), family4b),
    ]
    # family2 is fixed by every rotation in the 1-2 plane; the π/5 control runs on family3.
    fails = [
        is_fixed(sign_flip(2), family1),
        is_fixed(rotation_2d(1.0), build(FamilyId.GAMMA2)),
        is_fixed(rotation_3d(np.pi / 5), family3),
    ]
    return all(holds) and not any(fails), f"{sum(holds)}/4 symmetries, {sum(fails)} unexpected"


@check("catalog", "non-compact witnesses reach every signature", "§5")
def _noncompact(rng):
    covered = []
    for m in range(3, 7):
        for p in range(1, m):
            gamma = build(FamilyId.THM19_WITNESS, [p, m - p])
            sig = signature(symmetric_ricci(gamma))
            fixed = all(is_fixed(hyperbolic(alpha, m), gamma) for alpha in (2.0, -2.0, 1.0 / 3.0))
            if (sig.p, sig.q) != (p, m - p) or not fixed:
                return False, f"({p},{m - p}) gave {sig}"
            covered.append(f"({p},{m - p})")
    return True, " ".join(covered)


# ---------------------------------------------------------------------------
# cli
# ---------------------------------------------------------------------------

@check("cli", "documents round-trip bit-exactly", "document format")
def _round_trip(rng):
    for family in FamilyId:
        params = random_params(family, rng)
        doc = TensorDocument.from_christoffel(build(family, params), {"family": family.value, "params": params})
        back = parse(emit(doc))
        if back != doc or [c.hex() for c in back.coeffs] != [c.hex() for c in doc.coeffs]:
            return False, f"{family.value} changed in round trip"
    return True, f"{len(FamilyId)} families"


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyResult:
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def ledger(self) -> list[str]:
        return [r.ledger_line() for r in self.results]


def run_checks(scope: str = "all", seed: int = 0) -> VerifyResult:
    if scope != "all" and scope not in SCOPES:
        raise UnknownScopeError(f"unknown scope {scope!r}; expected 'all' or one of {', '.join(SCOPES)}")
    results = []
    for index, item in enumerate(CHECKS):
        if scope not in ("all", item.scope):
            continue
        rng = np.random.default_rng([seed, index])
        try:
            passed, detail = item.run(rng)
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(CheckResult(item.scope, item.label, item.citation, bool(passed), detail))
        logger.info("check_finished", scope=item.scope, label=item.label, passed=passed)
    return VerifyResult(results)
