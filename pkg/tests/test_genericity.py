"""Unit tests for geometry.genericity."""
import numpy as np
import pytest

from catalog.structures import FamilyId, build
from geometry.errors import DegenerateRicciError
from geometry.genericity import (
    cofactor_matrix,
    equivariance_exponent,
    exponent_survey,
    generic_poly,
    polynomial_degree,
    reference_kappa,
    xi_sequence,
    xi_tilde_sequence,
)
from geometry.tensors import Christoffel, act


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------

def test_cofactor_matrix_is_adjugate():
    a = np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]])
    np.testing.assert_allclose(cofactor_matrix(a) @ a, np.linalg.det(a) * np.eye(3), atol=1e-12)


def test_cofactor_matrix_of_singular_form():
    np.testing.assert_allclose(cofactor_matrix(np.diag([1.0, 0.0])), np.diag([0.0, 1.0]))


def test_planar_xi_at_one():
    xis = xi_sequence(build(FamilyId.PLANAR_X, [1.0]), 2)
    np.testing.assert_allclose(xis[0].components, [3.0, 1.0], atol=1e-12)
    np.testing.assert_allclose(xis[1].components, [-16.0, -6.0], atol=1e-12)


def test_model3d_xi_sequence():
    # Up to the alternating sign: (1,2,2), (5,22,11), (26,220,82).
    xis = xi_sequence(build(FamilyId.MODEL3D), 3)
    expected = [[1, 2, 2], [5, 22, 11], [26, 220, 82]]
    for n, (xi, want) in enumerate(zip(xis, expected)):
        np.testing.assert_allclose((-1) ** n * xi.components, want, atol=1e-10)
    columns = np.column_stack([(-1) ** n * xi.components for n, xi in enumerate(xis)])
    assert np.linalg.det(columns) == pytest.approx(192.0)


def test_tilde_sequence_is_scaled_xi():
    gamma = build(FamilyId.MODEL3D)
    det = 8.0
    tilde = xi_tilde_sequence(gamma, 3)
    plain = xi_sequence(gamma, 3)
    for n in range(3):
        np.testing.assert_allclose(
            tilde[n].components, (-1) ** n * det ** (n + 1) * plain[n].components, rtol=1e-12
        )


def test_xi_sequence_transports_as_vectors():
    rng = np.random.default_rng(6)
    gamma = build(FamilyId.MODEL3D)
    for _ in range(5):
        a = rng.normal(size=(3, 3)) * 0.3 + np.eye(3)
        moved = xi_sequence(act(a, gamma), 3)
        inverse = np.linalg.inv(a)
        for xi, xi_moved in zip(xi_sequence(gamma, 3), moved):
            scale = max(1.0, float(np.abs(xi_moved.components).max()))
            np.testing.assert_allclose(xi_moved.components, inverse @ xi.components, atol=1e-9 * scale)


def test_tilde_sequence_defined_for_degenerate_ricci():
    assert len(xi_tilde_sequence(Christoffel.zeros(3), 3)) == 3


def test_xi_sequence_degenerate():
    with pytest.raises(DegenerateRicciError):
        xi_sequence(Christoffel.zeros(3), 2)


def test_sequences_reject_empty_request():
    with pytest.raises(ValueError):
        xi_tilde_sequence(build(FamilyId.MODEL3D), 0)


# ---------------------------------------------------------------------------
# Genericity polynomial
# ---------------------------------------------------------------------------

def test_model3d_polynomial_value():
    report = generic_poly(build(FamilyId.MODEL3D))
    assert report.poly_value == pytest.approx(8 ** 7 * 192)
    assert report.generic
    assert report.degree == 39


def test_planar_polynomial_value():
    report = generic_poly(build(FamilyId.PLANAR_X, [1.0]))
    assert report.poly_value == pytest.approx(2.0)
    assert report.generic
    assert report.degree == 14


def test_zero_tensor_not_generic():
    report = generic_poly(Christoffel.zeros(3))
    assert report.poly_value == 0.0
    assert not report.generic


def test_highly_symmetric_structure_not_generic():
    # ω = 0 for family4a, so every ξ̃ vanishes.
    assert not generic_poly(build(FamilyId.FAMILY4A)).generic


def test_genericity_scale_invariant():
    gamma = build(FamilyId.MODEL3D)
    for scale in (1e-3, 1e3):
        assert generic_poly(act(scale * np.eye(3), gamma)).generic


def test_polynomial_degree():
    assert [polynomial_degree(m) for m in (2, 3, 4)] == [14, 39, 84]


# ---------------------------------------------------------------------------
# Equivariance exponent
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3])
def test_exponent_survey(m):
    survey = exponent_survey(m, trials=20, seed=1)
    assert survey.kappa == m * m + m + 1
    assert survey.odd_under_reversal
    assert survey.reference_kappa == reference_kappa(m)
    assert survey.matches_reference == (m == 3)


def test_reference_kappa():
    assert [reference_kappa(m) for m in (2, 3, 4)] == [8, 13, 20]


def test_equivariance_exponent_m4():
    assert equivariance_exponent(4, trials=10, seed=3) == 21


def test_exponent_survey_needs_trials():
    with pytest.raises(ValueError):
        exponent_survey(2, trials=3)
