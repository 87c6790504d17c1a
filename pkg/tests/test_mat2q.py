import numpy as np
import pytest
from hypothesis import given, settings

from conftest import eig_sqrt, quaternions
from uhlmann.errors import DegenerateInputError, ValidationError
from uhlmann.mat2q import (
    IDENTITY,
    SIGMA,
    canonical_quat,
    dagger,
    det2,
    inv2,
    is_su2,
    mat_sqrt_2x2,
    mat_to_axis_angle,
    mat_to_quat,
    quat_conj,
    quat_mul,
    quat_normalize,
    quat_to_mat,
    su2,
)


def random_psd(rng, n, top=10.0):
    w = rng.uniform(0.0, top, size=(n, 2))
    z = rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))
    Q, _ = np.linalg.qr(z)
    return Q @ (w[..., None] * np.eye(2)) @ dagger(Q)


def test_sqrt_identity():
    np.testing.assert_allclose(mat_sqrt_2x2(IDENTITY), IDENTITY, atol=1e-15)


def test_sqrt_diagonal():
    np.testing.assert_allclose(mat_sqrt_2x2(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]), atol=1e-15)


def test_sqrt_matches_eigendecomposition(rng):
    M = random_psd(rng, 2000)
    got = mat_sqrt_2x2(M)
    want = np.array([eig_sqrt(m) for m in M])
    assert np.max(np.abs(got - want)) < 1e-12
    assert np.max(np.abs(got @ got - M)) < 1e-12


def test_sqrt_rank_one():
    v = np.array([1.0, 1j]) / np.sqrt(2)
    P = np.outer(v, v.conj())
    np.testing.assert_allclose(mat_sqrt_2x2(P), P, atol=1e-15)


@pytest.mark.parametrize(
    "M, exc",
    [
        (np.array([[1, 1], [0, 1]], complex), ValidationError),
        (np.diag([1.0, -1.0]), ValidationError),
        (np.zeros((2, 2)), DegenerateInputError),
    ],
)
def test_sqrt_rejects(M, exc):
    with pytest.raises(exc):
        mat_sqrt_2x2(M)


def test_quat_units():
    np.testing.assert_allclose(quat_to_mat([1, 0, 0, 0]), IDENTITY)
    np.testing.assert_allclose(quat_to_mat([0, 1, 0, 0]), -1j * SIGMA[0])
    # i j = k
    np.testing.assert_allclose(quat_mul([0, 1, 0, 0], [0, 0, 1, 0]), [0, 0, 0, 1])


def _hamilton(p, q):
    # textbook component formula, written independently of quat_mul
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    )


def test_quat_to_mat_isomorphism_batch(rng):
    p = rng.normal(size=(10_000, 4))
    q = rng.normal(size=(10_000, 4))
    pq = quat_mul(p, q)
    assert np.max(np.abs(pq[:5] - np.array([_hamilton(a, b) for a, b in zip(p[:5], q[:5])]))) < 1e-14
    assert np.max(np.abs(quat_to_mat(pq) - quat_to_mat(p) @ quat_to_mat(q))) < 1e-13
    assert np.max(np.abs(quat_to_mat(p + q) - quat_to_mat(p) - quat_to_mat(q))) < 1e-14
    assert np.max(np.abs(quat_to_mat(quat_conj(p)) - dagger(quat_to_mat(p)))) < 1e-15
    assert np.max(np.abs(mat_to_quat(quat_to_mat(p)) - p)) < 1e-15


@given(quaternions(), quaternions())
def test_homomorphism_property(p, q):
    lhs = quat_to_mat(quat_mul(p, q))
    rhs = quat_to_mat(p) @ quat_to_mat(q)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_axis_angle_identity():
    aa = mat_to_axis_angle(IDENTITY)
    assert aa.alpha == 0.0
    np.testing.assert_array_equal(aa.axis, [0, 0, 1])


def test_axis_angle_quarter_turn_about_y():
    R = np.cos(np.pi / 4) * IDENTITY + 1j * np.sin(np.pi / 4) * SIGMA[1]
    aa = mat_to_axis_angle(R)
    assert aa.alpha == pytest.approx(np.pi / 2, abs=1e-15)
    np.testing.assert_allclose(aa.axis, [0, 1, 0], atol=1e-15)


def test_axis_angle_round_trip(rng):
    q = quat_normalize(rng.normal(size=(500, 4)))
    for qi in q:
        R = quat_to_mat(qi)
        aa = mat_to_axis_angle(R)
        assert -np.pi < aa.alpha <= np.pi
        R2 = su2(aa.alpha, aa.axis)
        # R and -R are the same rotation; the decomposition returns the w >= 0 one
        target = R if qi[0] >= 0 else -R
        assert np.max(np.abs(R2 - target)) < 1e-12


def test_axis_angle_rejects_non_unitary():
    with pytest.raises(ValidationError):
        mat_to_axis_angle(2 * IDENTITY)


def test_canonical_quat_tie_break():
    np.testing.assert_array_equal(canonical_quat([0.0, -1.0, 0.0, 0.0]), [0.0, 1.0, 0.0, 0.0])
    np.testing.assert_array_equal(canonical_quat([-0.5, 0.5, 0.5, 0.5]), [0.5, -0.5, -0.5, -0.5])


def test_su2_elements(rng):
    R = quat_to_mat(quat_normalize(rng.normal(size=(1000, 4))))
    assert np.max(np.abs(R @ dagger(R) - IDENTITY)) < 1e-13
    assert np.max(np.abs(det2(R) - 1)) < 1e-13
    assert is_su2(R)


def test_inv2(rng):
    M = rng.normal(size=(50, 2, 2)) + 1j * rng.normal(size=(50, 2, 2))
    assert np.max(np.abs(inv2(M) @ M - IDENTITY)) < 1e-12
    with pytest.raises(DegenerateInputError):
        inv2(np.ones((2, 2)))


@settings(max_examples=200)
@given(quaternions())
def test_sqrt_of_gram_matrix(q):
    M = quat_to_mat(q)
    G = dagger(M) @ M
    if np.trace(G).real < 1e-6:
        return
    S = mat_sqrt_2x2(G)
    assert np.max(np.abs(S @ S - G)) < 1e-10
