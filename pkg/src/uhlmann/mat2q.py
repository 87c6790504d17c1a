"""2x2 complex matrix and quaternion kernels.

Matrices are numpy arrays of shape ``(..., 2, 2)`` and quaternions are arrays
of shape ``(..., 4)`` in ``(w, x, y, z)`` order, so every function here works
on a single value or on a stack of them.

The quaternion units map onto SU(2) as ``i -> -i sigma_1``, ``j -> -i sigma_2``,
``k -> -i sigma_3``.  Under this map the rotation

    R(alpha, n) = cos(alpha/2) I + i sin(alpha/2) n.sigma

is the unit quaternion ``(cos(alpha/2), -sin(alpha/2) n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT
from .errors import DegenerateInputError, ValidationError

IDENTITY = np.eye(2, dtype=complex)
SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
# images of the quaternion units i, j, k
QUAT_UNITS = -1j * SIGMA


def pauli_dot(v) -> np.ndarray:
    """Return ``v . sigma`` for real 3-vectors ``v`` of shape (..., 3)."""
    v = np.asarray(v, dtype=float)
    return np.einsum("...k,kij->...ij", v.astype(complex), SIGMA)


def dagger(M) -> np.ndarray:
    return np.conj(np.swapaxes(M, -1, -2))


def trace2(M) -> np.ndarray:
    return M[..., 0, 0] + M[..., 1, 1]


def det2(M) -> np.ndarray:
    return M[..., 0, 0] * M[..., 1, 1] - M[..., 0, 1] * M[..., 1, 0]


def inv2(M) -> np.ndarray:
    """Explicit 2x2 inverse via the adjugate."""
    M = np.asarray(M)
    d = det2(M)
    if np.any(np.abs(d) == 0.0):
        raise DegenerateInputError("singular 2x2 matrix")
    adj = np.empty_like(M)
    adj[..., 0, 0] = M[..., 1, 1]
    adj[..., 1, 1] = M[..., 0, 0]
    adj[..., 0, 1] = -M[..., 0, 1]
    adj[..., 1, 0] = -M[..., 1, 0]
    return adj / d[..., None, None]


def hermitian_deviation(M) -> np.ndarray:
    """Max absolute entry of ``M - M^dagger`` per matrix."""
    return np.max(np.abs(M - dagger(M)), axis=(-2, -1))


def is_hermitian(M, tol: float = DEFAULT.hermitian) -> bool:
    return bool(np.all(hermitian_deviation(np.asarray(M)) <= tol))


def mat_sqrt_2x2(M, *, det=None, tol: float = DEFAULT.hermitian) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian 2x2 matrix.

    Uses the Cayley-Hamilton closed form

        sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)),

    which needs no eigendecomposition.  Inputs may be stacked.  For nearly
    singular products pass ``det`` computed from the factors; the entrywise
    determinant loses relative accuracy there.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape[-2:] != (2, 2):
        raise ValidationError(f"expected (..., 2, 2) matrices, got shape {M.shape}")
    if not is_hermitian(M, tol):
        raise ValidationError("matrix is not Hermitian")
    tr = trace2(M).real
    det = det2(M).real if det is None else np.asarray(det, dtype=float)
    # both eigenvalues >= 0  <=>  trace >= 0 and det >= 0
    if np.any(det < -tol) or np.any(tr < -tol):
        raise ValidationError("matrix has a negative eigenvalue")
    sdet = np.sqrt(np.clip(det, 0.0, None))
    denom2 = tr + 2.0 * sdet
    if np.any(denom2 <= tol * tol):
        raise DegenerateInputError("square root formula is singular for the zero matrix")
    return (M + sdet[..., None, None] * IDENTITY) / np.sqrt(denom2)[..., None, None]


# -- quaternions -------------------------------------------------------------


def quat(w=1.0, x=0.0, y=0.0, z=0.0) -> np.ndarray:
    return np.array([w, x, y, z], dtype=float)


def quat_mul(p, q) -> np.ndarray:
    """Hamilton product ``p q``."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, pv = p[..., 0], p[..., 1:]
    qw, qv = q[..., 0], q[..., 1:]
    w = pw * qw - np.sum(pv * qv, axis=-1)
    v = pw[..., None] * qv + qw[..., None] * pv + np.cross(pv, qv)
    return np.concatenate([w[..., None], v], axis=-1)


def quat_conj(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def quat_norm(q) -> np.ndarray:
    return np.linalg.norm(np.asarray(q, dtype=float), axis=-1)


def quat_normalize(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    n = quat_norm(q)
    if np.any(n == 0.0):
        raise DegenerateInputError("cannot normalize the zero quaternion")
    return q / n[..., None]


def quat_to_mat(q) -> np.ndarray:
    """Image of ``w + x i + y j + z k`` as ``w I + x(-i s1) + y(-i s2) + z(-i s3)``."""
    q = np.asarray(q, dtype=float)
    return q[..., 0, None, None] * IDENTITY + np.einsum(
        "...k,kij->...ij", q[..., 1:].astype(complex), QUAT_UNITS
    )


def mat_to_quat(M) -> np.ndarray:
    """Inverse of :func:`quat_to_mat` (projects onto the quaternion subalgebra)."""
    M = np.asarray(M, dtype=complex)
    w = 0.5 * (M[..., 0, 0] + M[..., 1, 1]).real
    x = -0.5 * (M[..., 0, 1] + M[..., 1, 0]).imag
    y = 0.5 * (M[..., 1, 0] - M[..., 0, 1]).real
    z = 0.5 * (M[..., 1, 1] - M[..., 0, 0]).imag
    return np.stack([w, x, y, z], axis=-1)


def canonical_quat(q) -> np.ndarray:
    """Pick the representative of ``{q, -q}`` with w > 0 (tie-break: first nonzero of x, y, z > 0)."""
    q = np.array(q, dtype=float)
    flat = q.reshape(-1, 4)
    for row in flat:
        for c in row:
            if c != 0.0:
                if c < 0.0:
                    row *= -1.0
                break
    return flat.reshape(q.shape)


# -- SU(2) -------------------------------------------------------------------


@dataclass(frozen=True)
class AxisAngle:
    """Rotation angle (radians) and unit axis of ``cos(a/2) I + i sin(a/2) n.sigma``."""

    alpha: float
    axis: np.ndarray


def su2(alpha, axis) -> np.ndarray:
    """``cos(alpha/2) I + i sin(alpha/2) axis.sigma``."""
    alpha = np.asarray(alpha, dtype=float)
    axis = np.asarray(axis, dtype=float)
    return np.cos(alpha / 2)[..., None, None] * IDENTITY + 1j * np.sin(alpha / 2)[
        ..., None, None
    ] * pauli_dot(axis)


def unitarity_deviation(R) -> np.ndarray:
    R = np.asarray(R, dtype=complex)
    return np.max(np.abs(R @ dagger(R) - IDENTITY), axis=(-2, -1))


def is_su2(R, tol: float = DEFAULT.unitary) -> bool:
    R = np.asarray(R, dtype=complex)
    return bool(
        np.all(unitarity_deviation(R) <= tol) and np.all(np.abs(det2(R) - 1.0) <= tol)
    )


def mat_to_axis_angle(R, *, tol: float = DEFAULT.unitary) -> AxisAngle:
    """Decompose one SU(2) matrix into angle and axis.

    R and -R describe the same spatial rotation; the representative with
    ``cos(alpha/2) >= 0`` is used, so ``alpha`` lies in ``[0, pi]`` with any
    orientation carried by the axis.  The identity returns the +z axis.
    """
    R = np.asarray(R, dtype=complex)
    if R.shape != (2, 2):
        raise ValidationError("mat_to_axis_angle takes a single 2x2 matrix")
    if not is_su2(R, tol):
        raise ValidationError("matrix is not in SU(2)")
    q = canonical_quat(mat_to_quat(R))
    # coefficient of i sigma is minus the quaternion vector part
    v = -q[1:]
    s = float(np.linalg.norm(v))
    if s < DEFAULT.cross_zero:
        return AxisAngle(0.0, np.array([0.0, 0.0, 1.0]))
    return AxisAngle(2.0 * float(np.arctan2(s, q[0])), v / s)


def quat_distance(p, q) -> np.ndarray:
    """Euclidean distance between quaternions (sign-sensitive, i.e. an SU(2) distance)."""
    return np.linalg.norm(np.asarray(p, dtype=float) - np.asarray(q, dtype=float), axis=-1)
