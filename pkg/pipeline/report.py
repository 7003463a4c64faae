"""
Analysis report for one structure.
Collects the curvature, genericity, stabilizer and torsion-bound results and
renders them as text or as a JSON-ready dict.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.tolerances import DEFAULT_TOLERANCES, Tolerances
from geometry.curvature import ricci, ricci_split, signature, symmetric_ricci
from geometry.genericity import generic_poly
from geometry.tensors import Christoffel, Signature, is_torsion_free
from symmetry.lattice import support_pattern, torsion_order_bound
from symmetry.stabilizer import stabilizer_lie_algebra

SIGNATURE_LEGEND = "p = negative/timelike, q = positive/spacelike"


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    m: int
    rho1: np.ndarray
    rho2: np.ndarray
    omega: np.ndarray
    ricci: np.ndarray
    symmetric_ricci: np.ndarray
    signature: Signature
    torsion_free: bool
    poly_value: float
    generic: bool
    stabilizer_dimension: int
    torsion_bound: int


def analyze(gamma: Christoffel, tol: Optional[Tolerances] = None) -> AnalysisReport:
    tol = tol or DEFAULT_TOLERANCES
    form = symmetric_ricci(gamma)
    genericity = generic_poly(gamma, tol)
    split = ricci_split(gamma)
    return AnalysisReport(
        m=gamma.m,
        rho1=split.rho1.entries,
        rho2=split.rho2.entries,
        omega=split.omega.components,
        ricci=ricci(gamma).entries,
        symmetric_ricci=form.entries,
        signature=signature(form, tol),
        torsion_free=is_torsion_free(gamma, tol.symmetry),
        poly_value=genericity.poly_value,
        generic=genericity.generic,
        stabilizer_dimension=stabilizer_lie_algebra(gamma, tol.rank).lie_dimension,
        torsion_bound=torsion_order_bound(support_pattern(gamma, tol.support)),
    )


def _number(value: float) -> str:
    # Canonical zero avoids "-0" in otherwise identical reports.
    return format(float(value) + 0.0, ".12g")


def _matrix_lines(matrix: np.ndarray) -> list[str]:
    return ["  [" + ", ".join(_number(v) for v in row) + "]" for row in matrix]


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def render_text(report: AnalysisReport) -> str:
    sig = report.signature
    lines = [
        f"dimension: {report.m}",
        f"torsion-free: {_yes_no(report.torsion_free)}",
        "rho1:",
        *_matrix_lines(report.rho1),
        "rho2:",
        *_matrix_lines(report.rho2),
        "omega: [" + ", ".join(_number(v) for v in report.omega) + "]",
        "ricci:",
        *_matrix_lines(report.ricci),
        "symmetric ricci:",
        *_matrix_lines(report.symmetric_ricci),
        f"signature {sig}  [{SIGNATURE_LEGEND}]",
        "degenerate Ricci" if sig.degenerate else "non-degenerate Ricci",
        f"genericity polynomial: {_number(report.poly_value)}",
        f"generic: {_yes_no(report.generic)}",
        f"stabilizer dim {report.stabilizer_dimension}",
        f"torsion bound: {report.torsion_bound}",
    ]
    return "\n".join(lines) + "\n"


def render_dict(report: AnalysisReport) -> dict:
    sig = report.signature
    return {
        "m": report.m,
        "torsion_free": report.torsion_free,
        "rho1": report.rho1.tolist(),
        "rho2": report.rho2.tolist(),
        "omega": report.omega.tolist(),
        "ricci": report.ricci.tolist(),
        "symmetric_ricci": report.symmetric_ricci.tolist(),
        "signature": {"p": sig.p, "q": sig.q, "degenerate": sig.degenerate, "legend": SIGNATURE_LEGEND},
        "poly_value": report.poly_value,
        "generic": report.generic,
        "stabilizer_dimension": report.stabilizer_dimension,
        "torsion_bound": report.torsion_bound,
    }
