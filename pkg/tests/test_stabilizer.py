"""Unit tests for symmetry.stabilizer and symmetry.normalize."""
import numpy as np
import pytest
import scipy.linalg

from catalog.structures import FamilyId, build, random_params
from geometry.curvature import signature, symmetric_ricci
from geometry.errors import DegenerateRicciError, DimensionMismatchError
from geometry.genericity import generic_poly
from geometry.tensors import Christoffel, SymForm, act
from symmetry.normalize import canonical_form, orthonormal_frame, ricci_normalizer
from symmetry.stabilizer import action_matrix, infinitesimal_action, stabilizer_lie_algebra


# ---------------------------------------------------------------------------
# Infinitesimal action
# ---------------------------------------------------------------------------

def test_infinitesimal_action_is_derivative_of_act():
    rng = np.random.default_rng(0)
    gamma = build(FamilyId.MODEL3D)
    xi = rng.normal(size=(3, 3))
    t = 1e-6
    numeric = (act(scipy.linalg.expm(t * xi), gamma).coeffs - act(scipy.linalg.expm(-t * xi), gamma).coeffs) / (2 * t)
    np.testing.assert_allclose(infinitesimal_action(xi, gamma).coeffs, numeric, atol=1e-6)


def test_infinitesimal_action_shape_check():
    with pytest.raises(DimensionMismatchError):
        infinitesimal_action(np.eye(2), Christoffel.zeros(3))


def test_action_matrix_columns():
    gamma = build(FamilyId.MODEL3D)
    matrix = action_matrix(gamma)
    assert matrix.shape == (27, 9)
    unit = np.zeros((3, 3))
    unit[1, 2] = 1.0
    np.testing.assert_allclose(matrix[:, 5], infinitesimal_action(unit, gamma).coeffs.ravel())


# ---------------------------------------------------------------------------
# Stabilizer dimension
# ---------------------------------------------------------------------------

def test_family1_stabilizer_is_hyperbolic():
    report = stabilizer_lie_algebra(build(FamilyId.FAMILY1, [1, 1, 1, 3]))
    assert report.lie_dimension == 1
    generator = report.lie_basis[0]
    direction = np.diag([1.0, -1.0, 0.0]) / np.sqrt(2.0)
    assert abs(np.sum(generator * direction)) == pytest.approx(1.0, abs=1e-8)


def test_family2_stabilizer_is_rotation():
    report = stabilizer_lie_algebra(build(FamilyId.FAMILY2, [1, 1, 1, 3]))
    assert report.lie_dimension == 1
    generator = report.lie_basis[0]
    np.testing.assert_allclose(generator, -generator.T, atol=1e-8)


def test_model3d_stabilizer_is_trivial():
    report = stabilizer_lie_algebra(build(FamilyId.MODEL3D))
    assert report.lie_dimension == 0


def test_zero_tensor_stabilizer_is_everything():
    report = stabilizer_lie_algebra(Christoffel.zeros(3))
    assert report.lie_dimension == 9
    assert report.spectral_gap == float("inf")


def test_thm19_witness_has_boost():
    assert stabilizer_lie_algebra(build(FamilyId.THM19_WITNESS, [1, 2])).lie_dimension >= 1


def _signed_draws(rng, count):
    return (rng.uniform(0.5, 2.0, size=count) * rng.choice([1.0, -1.0], size=count)).tolist()


def test_generic_samples_have_trivial_stabilizer():
    rng = np.random.default_rng(20)
    checked = 0
    while checked < 10:
        coeffs = rng.normal(size=(3, 3, 3))
        gamma = Christoffel(0.5 * (coeffs + coeffs.transpose(1, 0, 2)))
        if not generic_poly(gamma).generic:
            continue
        assert stabilizer_lie_algebra(gamma).lie_dimension == 0
        checked += 1


@pytest.mark.parametrize("family", [FamilyId.FAMILY1, FamilyId.FAMILY2])
def test_one_parameter_families_at_random_points(family):
    rng = np.random.default_rng(21)
    for _ in range(10):
        assert stabilizer_lie_algebra(build(family, _signed_draws(rng, 4))).lie_dimension == 1


@pytest.mark.parametrize("family", [FamilyId.FAMILY3, FamilyId.FAMILY4A, FamilyId.FAMILY4B])
def test_finite_group_families_have_no_continuous_symmetry(family):
    rng = np.random.default_rng(22)
    for _ in range(5):
        params = random_params(family, rng)
        assert stabilizer_lie_algebra(build(family, params)).lie_dimension == 0


@pytest.mark.parametrize(
    "family, params",
    [
        (FamilyId.FAMILY1, [1, 1, 1, 3]),
        (FamilyId.FAMILY2, [1, 1, 1, 3]),
        (FamilyId.MODEL3D, []),
        (FamilyId.THM19_WITNESS, [2, 2]),
    ],
)
def test_stabilizer_dimension_is_basis_invariant(family, params):
    rng = np.random.default_rng(23)
    gamma = build(family, params)
    want = stabilizer_lie_algebra(gamma).lie_dimension
    for _ in range(5):
        a = rng.normal(size=(gamma.m, gamma.m)) * 0.3 + np.eye(gamma.m)
        assert stabilizer_lie_algebra(act(a, gamma)).lie_dimension == want


@pytest.mark.parametrize(
    "family, start, limit",
    [
        (FamilyId.FAMILY1, [2.0, 1.0, -1.0, 3.0], [1.0, 0.0, 0.0, 1.0]),
        (FamilyId.FAMILY2, [2.0, -1.0, 0.5, 1.0], [1.0, 1.0, 1.0, 3.0]),
    ],
)
def test_continuous_symmetry_persists_to_the_limit(family, start, limit):
    start, limit = np.array(start), np.array(limit)
    for t in np.linspace(0.0, 1.0, 20):
        params = (1.0 - t) * start + t * limit
        assert stabilizer_lie_algebra(build(family, params.tolist())).lie_dimension >= 1


def test_stabilizer_spectral_gap_is_large():
    report = stabilizer_lie_algebra(build(FamilyId.FAMILY1, [1, 1, 1, 3]))
    assert report.spectral_gap > 1e3


def test_stabilizer_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        stabilizer_lie_algebra(build(FamilyId.MODEL3D), tol_rank=1.5)


# ---------------------------------------------------------------------------
# Ricci normalizer
# ---------------------------------------------------------------------------

def test_model3d_normalizer():
    s = ricci_normalizer(build(FamilyId.MODEL3D))
    np.testing.assert_allclose(np.abs(s.entries), np.eye(3) / np.sqrt(2.0), atol=1e-12)
    assert s.det() > 0


def test_family4a_normalizes_to_one_timelike():
    gamma = build(FamilyId.FAMILY4A)
    s = ricci_normalizer(gamma)
    np.testing.assert_allclose(symmetric_ricci(act(s, gamma)).entries, np.diag([-1.0, 1.0, 1.0]), atol=1e-12)


def test_normalizer_random_structures():
    rng = np.random.default_rng(1)
    for _ in range(10):
        coeffs = rng.normal(size=(4, 4, 4))
        gamma = Christoffel(0.5 * (coeffs + coeffs.transpose(1, 0, 2)))
        sig = signature(symmetric_ricci(gamma))
        s = ricci_normalizer(gamma)
        assert s.det() > 0
        np.testing.assert_allclose(
            symmetric_ricci(act(s, gamma)).entries, canonical_form(sig.p, sig.q), atol=1e-8
        )


def test_orthonormal_frame_handles_null_basis():
    # Every basis vector is null for the hyperbolic form.
    frame, signs = orthonormal_frame(SymForm([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_array_equal(signs, [-1.0, 1.0])
    np.testing.assert_allclose(frame.T @ np.array([[0.0, 1.0], [1.0, 0.0]]) @ frame, np.diag(signs), atol=1e-12)


def test_normalizer_degenerate():
    with pytest.raises(DegenerateRicciError):
        ricci_normalizer(build(FamilyId.FAMILY1, [1, 0, 0, 1]))


def test_canonical_form():
    np.testing.assert_array_equal(canonical_form(1, 2), np.diag([-1.0, 1.0, 1.0]))
