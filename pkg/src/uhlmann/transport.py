"""Uhlmann transport of purifications as products of Thomas rotations.

``thomas_rotation(u, v)`` is the SU(2) factor ``Y_uv`` that carries the
unitary part of a parallel purification from ``v`` to ``u``:

    Y_uv = rho_u^(-1/2) rho_v^(-1/2) (rho_v^(1/2) rho_u rho_v^(1/2))^(1/2).

Products are ordered right to left, earliest segment rightmost, so the path
``v0 -> v1 -> ... -> vm`` has holonomy ``Y(vm, vm-1) ... Y(v1, v0)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bures import fidelity, geodesic_points
from .config import DEFAULT
from .errors import DegenerateInputError, PhaseUndefinedError, ValidationError
from .mat2q import (
    IDENTITY,
    AxisAngle,
    det2,
    inv2,
    mat_sqrt_2x2,
    mat_to_axis_angle,
    pauli_dot,
    trace2,
)
from .state import (
    bloch_to_density,
    concurrence,
    inv_sqrt_density,
    require_interior,
    sqrt_density,
)


def _rotation_from_parts(scalar, vector) -> np.ndarray:
    """``(s I + i v.sigma) / sqrt(s^2 + |v|^2)``."""
    norm = np.sqrt(scalar**2 + np.sum(vector * vector, axis=-1))
    return (scalar[..., None, None] * IDENTITY + 1j * pauli_dot(vector)) / norm[..., None, None]


def thomas_rotation(u, v, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Closed-form segment transport ``Y_uv``.

    ``([(1 + C_u)(1 + C_v) + u.v] I + i (u x v).sigma)`` normalized to unit
    determinant.  The scalar part is always positive inside the ball, so the
    rotation angle is below pi.
    """
    u = require_interior(u, eps)
    v = require_interior(v, eps)
    s = (1.0 + concurrence(u)) * (1.0 + concurrence(v)) + np.sum(u * v, axis=-1)
    return _rotation_from_parts(s, np.cross(u, v))


def thomas_angle_axis(u, v, *, eps: float = DEFAULT.purity_eps):
    """Angle and axis of ``Y_uv``: ``tan(alpha/2) = |u x v| / [(1+C_u)(1+C_v) + u.v]``.

    The axis is ``(u x v)/|u x v|``; collinear inputs give ``alpha = 0`` and
    the +z axis.
    """
    u = require_interior(u, eps)
    v = require_interior(v, eps)
    cross = np.cross(u, v)
    s = (1.0 + concurrence(u)) * (1.0 + concurrence(v)) + float(u @ v)
    n = float(np.linalg.norm(cross))
    if n < DEFAULT.cross_zero:
        return AxisAngle(0.0, np.array([0.0, 0.0, 1.0]))
    return AxisAngle(2.0 * float(np.arctan2(n, s)), cross / n)


def rotation_renormalized(a, b) -> np.ndarray:
    """Segment rotation in renormalized coordinates ``a = u/(1 + C_u)``.

    ``((1 + a.b) I + i (a x b).sigma) / sqrt(1 + 2 a.b + |a|^2 |b|^2)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return _rotation_from_parts(1.0 + np.sum(a * b, axis=-1), np.cross(a, b))


def thomas_rotation_oracle(u, v, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """``Y_uv`` evaluated literally from matrix square roots and explicit inverses."""
    u = require_interior(u, eps)
    v = require_interior(v, eps)
    rho_u = bloch_to_density(u)
    rho_v = bloch_to_density(v)
    det_u = det2(rho_u).real
    det_v = det2(rho_v).real
    sqrt_u = mat_sqrt_2x2(rho_u, det=det_u)
    sqrt_v = mat_sqrt_2x2(rho_v, det=det_v)
    inner = sqrt_v @ rho_u @ sqrt_v
    inner = 0.5 * (inner + np.conj(np.swapaxes(inner, -1, -2)))
    # det is multiplicative; avoids cancellation near the boundary
    return inv2(sqrt_u) @ inv2(sqrt_v) @ mat_sqrt_2x2(inner, det=det_u * det_v)


def segment_x(u, v, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Positive transport operator ``X_uv = rho_v^(-1/2) (rho_v^(1/2) rho_u rho_v^(1/2))^(1/2) rho_v^(-1/2)``.

    Satisfies ``X_uv rho_v^(1/2) = rho_u^(1/2) Y_uv`` exactly.
    """
    u = require_interior(u, eps)
    v = require_interior(v, eps)
    sqrt_v = sqrt_density(v, eps)
    inv_v = inv_sqrt_density(v, eps)
    rho_u = bloch_to_density(u)
    inner = sqrt_v @ rho_u @ sqrt_v
    inner = 0.5 * (inner + np.conj(np.swapaxes(inner, -1, -2)))
    det = det2(rho_u).real * det2(bloch_to_density(v)).real
    return inv_v @ mat_sqrt_2x2(inner, det=det) @ inv_v


def hyperbolic_translate(a, b) -> np.ndarray:
    """Moebius translation of ``b`` by ``a`` inside the unit ball.

    ``((1 - |a|^2) b + (1 + 2 a.b + |b|^2) a) / (1 + 2 a.b + |a|^2 |b|^2)``
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ab = np.sum(a * b, axis=-1)
    a2 = np.sum(a * a, axis=-1)
    b2 = np.sum(b * b, axis=-1)
    num = (1.0 - a2)[..., None] * b + (1.0 + 2.0 * ab + b2)[..., None] * a
    return num / (1.0 + 2.0 * ab + a2 * b2)[..., None]


# -- paths -------------------------------------------------------------------


@dataclass(frozen=True)
class HolonomyResult:
    """Holonomy of a closed geodesic polygon based at its first vertex.

    ``visibility * exp(1j * phase) == Tr(rotation @ rho_0)``.
    """

    rotation: np.ndarray
    phase: float
    visibility: float
    angle_axis: AxisAngle
    trace: complex


def _as_path(vertices, eps) -> np.ndarray:
    pts = require_interior(np.atleast_2d(np.asarray(vertices, dtype=float)), eps)
    if pts.ndim != 2 or len(pts) < 2:
        raise ValidationError("a path needs at least two vertices")
    f = fidelity(pts[:-1], pts[1:])
    if np.any(f <= 0.0):
        raise DegenerateInputError("consecutive vertices with zero fidelity")
    return pts


def path_rotation(vertices, *, closed: bool = True, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Ordered product of segment rotations along a polygon.

    For a closed path the final edge back to the first vertex is included.
    """
    pts = _as_path(vertices, eps)
    if closed:
        pts = np.concatenate([pts, pts[:1]])
    factors = thomas_rotation(pts[1:], pts[:-1], eps=eps)
    R = IDENTITY.copy()
    for Y in factors:
        R = Y @ R
    return R


def polygon_holonomy(
    vertices,
    *,
    reverse: bool = False,
    eps: float = DEFAULT.purity_eps,
    visibility_floor: float = DEFAULT.visibility_floor,
) -> HolonomyResult:
    """Phase and visibility of a closed geodesic polygon.

    ``reverse`` traverses the same vertices in the opposite sense from the
    same base point, which conjugates the phase.
    """
    pts = _as_path(vertices, eps)
    if reverse:
        pts = np.concatenate([pts[:1], pts[:0:-1]])
    R = path_rotation(pts, closed=True, eps=eps)
    tr = complex(trace2(R @ bloch_to_density(pts[0])))
    nu = abs(tr)
    if nu < visibility_floor:
        raise PhaseUndefinedError(f"visibility {nu:.3g} below floor {visibility_floor:g}")
    return HolonomyResult(
        rotation=R,
        phase=float(np.angle(tr)),
        visibility=float(nu),
        angle_axis=mat_to_axis_angle(R),
        trace=tr,
    )


@dataclass(frozen=True)
class RefinedSegment:
    rotation: np.ndarray
    deviation: float
    n_subdiv: int


def refined_geodesic_holonomy(u, v, n_subdiv: int, *, eps: float = DEFAULT.purity_eps) -> RefinedSegment:
    """Transport from ``v`` to ``u`` as a product over ``n_subdiv`` equal-arc geodesic pieces.

    ``deviation`` is the max-entry distance from the two-point ``Y_uv``.
    """
    if n_subdiv < 1:
        raise ValueError("n_subdiv must be positive")
    pts = geodesic_points(v, u, n_subdiv)
    R = path_rotation(pts, closed=False, eps=eps)
    dev = float(np.max(np.abs(R - thomas_rotation(u, v, eps=eps))))
    return RefinedSegment(R, dev, n_subdiv)
