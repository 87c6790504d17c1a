"""Purifications as quaternionic spinors and the Hopf map S^7 -> S^4.

A purification ``W = (Q0 + i Q1)/sqrt 2`` is stored as the spinor array
``[q0, q1]`` of shape ``(..., 2, 4)``, where ``Q0, Q1`` are the matrix images
of the quaternions ``q0, q1``.  Points of S^4 are arrays ``(u0, u1, u2, u3, u4)``.
On the subbundle with ``u0 = 0`` and ``u4 = C > 0`` the section spinor of a
Bloch vector is the positive root ``rho^(1/2)``, and Pancharatnam transport of
section spinors reproduces the Thomas-rotation holonomy.
"""

from __future__ import annotations

import warnings

import numpy as np

from .bures import fidelity, geodesic_distance, geodesic_points
from .config import DEFAULT
from .errors import CoarseStepWarning, DegenerateInputError, ValidationError
from .mat2q import quat_conj, quat_mul, quat_norm, quat_to_mat
from .state import concurrence, require_interior

_SQRT2 = np.sqrt(2.0)


def _check_normalized(spinor, tol):
    n2 = np.sum(spinor * spinor, axis=(-2, -1))
    if np.any(np.abs(n2 - 1.0) > tol):
        raise ValidationError("spinor is not normalized")


def w_to_spinor(W, *, tol: float = DEFAULT.normalization) -> np.ndarray:
    W = np.asarray(W, dtype=complex)
    if np.any(np.abs(np.sum(np.abs(W) ** 2, axis=(-2, -1)) - 1.0) > tol):
        raise ValidationError("purification is not normalized (Tr W W^dagger != 1)")
    a = _SQRT2 * W[..., 0, 0]
    b = _SQRT2 * W[..., 0, 1]
    c = _SQRT2 * W[..., 1, 0]
    d = _SQRT2 * W[..., 1, 1]
    alpha = 0.5 * np.stack([a.real + d.real, -b.imag - c.imag, c.real - b.real, d.imag - a.imag], axis=-1)
    beta = 0.5 * np.stack([a.imag + d.imag, b.real + c.real, c.imag - b.imag, a.real - d.real], axis=-1)
    return np.stack([alpha, beta], axis=-2)


def spinor_to_w(spinor) -> np.ndarray:
    spinor = np.asarray(spinor, dtype=float)
    return (quat_to_mat(spinor[..., 0, :]) + 1j * quat_to_mat(spinor[..., 1, :])) / _SQRT2


def hopf_projection(spinor, *, tol: float = DEFAULT.normalization) -> np.ndarray:
    """``u = 2 q1 conj(q0)`` and ``u4 = |q0|^2 - |q1|^2``, returned as ``(u0, u1, u2, u3, u4)``."""
    spinor = np.asarray(spinor, dtype=float)
    _check_normalized(spinor, tol)
    q0, q1 = spinor[..., 0, :], spinor[..., 1, :]
    u = 2.0 * quat_mul(q1, quat_conj(q0))
    u4 = np.sum(q0 * q0, axis=-1) - np.sum(q1 * q1, axis=-1)
    return np.concatenate([u, u4[..., None]], axis=-1)


def subbundle_point(u, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """S^4 point ``(0, u, C_u)`` of an interior Bloch vector."""
    u = require_interior(u, eps)
    zero = np.zeros(u.shape[:-1] + (1,))
    return np.concatenate([zero, u, concurrence(u)[..., None]], axis=-1)


def section(point, *, tol: float = DEFAULT.normalization) -> np.ndarray:
    """Local section ``(1 + u4, u) / sqrt(2 (1 + u4))`` away from the south pole."""
    point = np.asarray(point, dtype=float)
    if np.any(np.abs(np.sum(point * point, axis=-1) - 1.0) > tol):
        raise ValidationError("point is not on S^4")
    u4 = point[..., 4]
    if np.any(1.0 + u4 <= tol):
        raise DegenerateInputError("the section is singular at the south pole")
    scale = 1.0 / np.sqrt(2.0 * (1.0 + u4))
    q0 = np.zeros(point.shape[:-1] + (4,))
    q0[..., 0] = (1.0 + u4) * scale
    q1 = point[..., :4] * scale[..., None]
    return np.stack([q0, q1], axis=-2)


def bloch_section(u, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Section spinor over the subbundle point of ``u``; its matrix is ``rho_u^(1/2)``."""
    return section(subbundle_point(u, eps=eps))


def right_multiply(spinor, s) -> np.ndarray:
    """Gauge action ``(q0, q1) -> (q0 s, q1 s)``."""
    spinor = np.asarray(spinor, dtype=float)
    return np.stack([quat_mul(spinor[..., 0, :], s), quat_mul(spinor[..., 1, :], s)], axis=-2)


def inner(p, q) -> np.ndarray:
    """Quaternion-valued ``<p|q> = conj(p0) q0 + conj(p1) q1`` (conjugate-linear in the first slot)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return quat_mul(quat_conj(p[..., 0, :]), q[..., 0, :]) + quat_mul(quat_conj(p[..., 1, :]), q[..., 1, :])


def phase_factor(p, q, *, tol: float = 1e-12) -> np.ndarray:
    """Unit quaternion ``<p|q> / |<p|q>|``."""
    z = inner(p, q)
    n = quat_norm(z)
    if np.any(n < tol):
        raise DegenerateInputError("orthogonal spinors have no relative phase")
    return z / n[..., None]


def quaternionic_pancharatnam(spinors, *, closed: bool = True) -> np.ndarray:
    """Ordered product of Pancharatnam phase factors along a list of spinors.

    For ``[s0, s1, ..., sm]`` and ``closed=True`` this is
    ``<s0|sm> ... <s2|s1> <s1|s0>`` with every factor normalized, i.e. the
    same ordering as the matrix holonomy.
    """
    spinors = np.asarray(spinors, dtype=float)
    if closed:
        spinors = np.concatenate([spinors, spinors[:1]])
    factors = phase_factor(spinors[1:], spinors[:-1])
    out = np.array([1.0, 0.0, 0.0, 0.0])
    for f in factors:
        out = quat_mul(f, out)
    return out


def in_phase(p, q, *, tol: float = DEFAULT.parallel) -> bool:
    """``<p|q>`` real and positive."""
    z = inner(p, q)
    return bool(np.max(np.abs(z[1:])) <= tol and z[0] > 0.0)


def connection(u, du) -> np.ndarray:
    """Gauge field ``A = (1/2) Im(conj(u) du) / (1 + C_u)`` on the subbundle.

    ``u`` and ``du`` are Bloch 3-vectors read as pure-imaginary quaternions.
    Returns a quaternion with zero real part.
    """
    u = np.asarray(u, dtype=float)
    du = np.asarray(du, dtype=float)
    uq = np.concatenate([np.zeros(u.shape[:-1] + (1,)), u], axis=-1)
    duq = np.concatenate([np.zeros(du.shape[:-1] + (1,)), du], axis=-1)
    prod = quat_mul(quat_conj(uq), duq)
    A = 0.5 * prod / (1.0 + concurrence(u))[..., None]
    A[..., 0] = 0.0
    return A


def _refine_loop(vertices, n_steps):
    pts = np.atleast_2d(np.asarray(vertices, dtype=float))
    loop = np.concatenate([pts, pts[:1]])
    lengths = np.array([geodesic_distance(x, y) for x, y in zip(loop[:-1], loop[1:])])
    total = lengths.sum()
    chunks = []
    for x, y, ell in zip(loop[:-1], loop[1:], lengths):
        if ell == 0.0:
            continue
        n = max(1, int(round(n_steps * ell / total)))
        chunks.append(geodesic_points(x, y, n)[:-1])
    if not chunks:
        return pts[:1]
    return np.concatenate(chunks)


def wilson_loop(
    vertices,
    n_steps: int,
    *,
    eps: float = DEFAULT.purity_eps,
    max_drift: float = DEFAULT.step_drift,
) -> np.ndarray:
    """Discretized path-ordered exponential of ``-A`` around a closed geodesic polygon.

    The polygon is refined into about ``n_steps`` equal-arc steps; each step
    contributes ``1 - A_k`` (evaluated at the step's start point) and the
    running product is renormalized to a unit quaternion.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    pts = require_interior(np.atleast_2d(np.asarray(vertices, dtype=float)), eps)
    if len(pts) > 1 and np.any(fidelity(pts, np.roll(pts, -1, axis=0)) <= 0.0):
        raise DegenerateInputError("consecutive vertices with zero fidelity")
    path = _refine_loop(pts, n_steps)
    closed = np.concatenate([path, path[:1]])
    A = connection(closed[:-1], closed[1:] - closed[:-1])
    steps = np.array([1.0, 0.0, 0.0, 0.0]) - A
    drift = np.max(quat_norm(steps) - 1.0) if len(steps) else 0.0
    if drift > max_drift:
        warnings.warn(f"step too coarse: renormalization drift {drift:.3g}", CoarseStepWarning)
    out = np.array([1.0, 0.0, 0.0, 0.0])
    for s in steps:
        out = quat_mul(s, out)
        out /= quat_norm(out)
    return out
