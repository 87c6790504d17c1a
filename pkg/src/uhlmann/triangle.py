"""Closed forms for geodesic triangles in the Bloch ball.

The triangle ``u -> v -> w -> u`` has holonomy

    Rt = Y_uw Y_wv Y_vu = cos(delta/2) I + i sin(delta/2) m.sigma

and ``nu exp(i Phi) = Tr(Rt rho_u)``.  Everything here is expressed through
Bures fidelities, the triple product ``V = u.(v x w)`` and, in the
renormalized coordinates ``a, b, c``, the two auxiliary vectors ``p, q``.

All triangle functions broadcast over leading axes of ``u, v, w``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .bures import fidelity
from .config import DEFAULT
from .errors import DegenerateInputError, PhaseUndefinedError, ValidationError
from .mat2q import IDENTITY, pauli_dot
from .state import concurrence, renormalize, require_interior
from .transport import rotation_renormalized


def _dot(x, y):
    return np.sum(x * y, axis=-1)


def _interior_triple(u, v, w, eps):
    u = require_interior(u, eps)
    v = require_interior(v, eps)
    w = require_interior(w, eps)
    return u, v, w


def _fidelities(u, v, w):
    f_uv, f_vw, f_wu = fidelity(u, v), fidelity(v, w), fidelity(w, u)
    if np.any(f_uv <= 0.0) or np.any(f_vw <= 0.0) or np.any(f_wu <= 0.0):
        raise DegenerateInputError("a pair of vertices has zero fidelity")
    return f_uv, f_vw, f_wu


def triple_product(u, v, w):
    return _dot(np.asarray(u, float), np.cross(v, w))


def p_q_vectors(u, v, w, *, eps: float = DEFAULT.purity_eps):
    """Spherical translates by ``a`` of ``c`` and ``b``.

    ``p = ((1 + a^2) c - (1 + 2 a.c - c^2) a) / (1 + 2 a.c + a^2 c^2)`` and
    likewise ``q`` with ``b`` in place of ``c``.
    """
    u, v, w = _interior_triple(u, v, w, eps)
    a, b, c = renormalize(u), renormalize(v), renormalize(w)
    a2 = _dot(a, a)

    def translate(x):
        ax = _dot(a, x)
        x2 = _dot(x, x)
        num = (1.0 + a2)[..., None] * x - (1.0 + 2.0 * ax - x2)[..., None] * a
        return num / (1.0 + 2.0 * ax + a2 * x2)[..., None]

    return translate(c), translate(b)


@dataclass(frozen=True)
class TriangleResult:
    rotation: np.ndarray
    delta: np.ndarray
    axis: np.ndarray
    phase: np.ndarray
    visibility: np.ndarray
    p: np.ndarray
    q: np.ndarray
    mu: np.ndarray
    volume: np.ndarray


def triangle_rotation(
    u, v, w, *, eps: float = DEFAULT.purity_eps, visibility_floor: float = DEFAULT.visibility_floor
) -> TriangleResult:
    """Holonomy of the geodesic triangle from the ``p, q`` closed form.

    ``delta`` is in ``[0, 2 pi)`` with ``tan(delta/2) = |p x q| / (1 + p.q)``;
    when ``p x q`` vanishes the axis defaults to +z.  ``mu`` is built from the
    unit directions of the vertices, which is the solid-angle ``mu`` on
    fixed-radius shells.
    """
    u, v, w = _interior_triple(u, v, w, eps)
    p, q = p_q_vectors(u, v, w, eps=eps)
    R = rotation_renormalized(p, q)
    cross = np.cross(p, q)
    s = np.linalg.norm(cross, axis=-1)
    delta = 2.0 * np.arctan2(s, 1.0 + _dot(p, q))
    safe = np.where(s > DEFAULT.cross_zero, s, 1.0)
    axis = np.where((s > DEFAULT.cross_zero)[..., None], cross / safe[..., None], np.array([0.0, 0.0, 1.0]))
    phase, nu = triangle_phase_visibility(u, v, w, eps=eps, visibility_floor=visibility_floor)
    return TriangleResult(
        rotation=R,
        delta=delta,
        axis=axis,
        phase=phase,
        visibility=nu,
        p=p,
        q=q,
        mu=_mu(_unit(u), _unit(v), _unit(w)),
        volume=triple_product(u, v, w),
    )


def triangle_rotation_product(u, v, w, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Three-factor product ``R(a, c) R(c, b) R(b, a)`` of segment rotations."""
    u, v, w = _interior_triple(u, v, w, eps)
    a, b, c = renormalize(u), renormalize(v), renormalize(w)
    return rotation_renormalized(a, c) @ rotation_renormalized(c, b) @ rotation_renormalized(b, a)


def triangle_delta_cos(u, v, w, *, eps: float = DEFAULT.purity_eps):
    """``cos(delta/2) = (F_uw + F_wv + F_vu - 1) / (2 sqrt(F_uw F_wv F_vu))``."""
    u, v, w = _interior_triple(u, v, w, eps)
    f_uv, f_vw, f_wu = _fidelities(u, v, w)
    return (f_uv + f_vw + f_wu - 1.0) / (2.0 * np.sqrt(f_uv * f_vw * f_wu))


def j_matrix_oracle(u, v, w, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """``J = (I + a c)(I + c b)(I + b a)`` by direct multiplication, with ``x = x.sigma``."""
    u, v, w = _interior_triple(u, v, w, eps)
    A, B, C = (pauli_dot(renormalize(x)) for x in (u, v, w))
    return (IDENTITY + A @ C) @ (IDENTITY + C @ B) @ (IDENTITY + B @ A)


def j_matrix_expansion(u, v, w, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Expanded form of ``J``: scalar part plus commutator terms."""
    u, v, w = _interior_triple(u, v, w, eps)
    a, b, c = renormalize(u), renormalize(v), renormalize(w)
    a2, b2, c2 = _dot(a, a), _dot(b, b), _dot(c, c)
    A, B, C = pauli_dot(a), pauli_dot(b), pauli_dot(c)

    def comm(X, Y):
        return X @ Y - Y @ X

    ca = _dot(c, a)[..., None, None]
    ab = _dot(a, b)[..., None, None]
    scalar = 1.0 + a2 * b2 * c2 + (1.0 + a2) * _dot(b, c) + (1.0 + b2) * _dot(c, a) + (1.0 + c2) * _dot(a, b)
    return (
        scalar[..., None, None] * IDENTITY
        + comm(C - ca * A, B - ab * A)
        + 0.5
        * (
            (1.0 - a2)[..., None, None] * comm(B, C)
            - (1.0 - b2)[..., None, None] * comm(C, A)
            - (1.0 - c2)[..., None, None] * comm(A, B)
        )
    )


def j_prefactor(u, v, w, *, eps: float = DEFAULT.purity_eps):
    """Scalar with ``Rt = j_prefactor * J``.

    ``(1 + C_u)(1 + C_v)(1 + C_w) / (8 sqrt(F_uv F_vw F_wu))``, one
    normalization factor per edge.
    """
    u, v, w = _interior_triple(u, v, w, eps)
    f_uv, f_vw, f_wu = _fidelities(u, v, w)
    num = (1.0 + concurrence(u)) * (1.0 + concurrence(v)) * (1.0 + concurrence(w))
    return num / (8.0 * np.sqrt(f_uv * f_vw * f_wu))


def sphere_inversion(x, center, r2):
    """Inversion in the sphere of squared radius ``r2`` about ``center``."""
    x = np.asarray(x, dtype=float)
    center = np.asarray(center, dtype=float)
    d = x - center
    d2 = _dot(d, d)
    if np.any(d2 == 0.0):
        raise DegenerateInputError("inversion is undefined at the sphere centre")
    return center + (np.asarray(r2, dtype=float) / d2)[..., None] * d


def p_from_inversions(a, c):
    """``p`` as the unit-sphere inversion of ``c`` inverted about ``a`` with ``r^2 = 1 + |a|^2``."""
    a = np.asarray(a, dtype=float)
    return sphere_inversion(sphere_inversion(c, a, 1.0 + _dot(a, a)), np.zeros(3), 1.0)


def triangle_trace(u, v, w, *, eps: float = DEFAULT.purity_eps):
    """``Tr(Rt rho_u) = (F_uv + F_vw + F_wu - 1 - (i/2) V) / (2 sqrt(F_uv F_vw F_wu))``."""
    u, v, w = _interior_triple(u, v, w, eps)
    f_uv, f_vw, f_wu = _fidelities(u, v, w)
    V = triple_product(u, v, w)
    return (f_uv + f_vw + f_wu - 1.0 - 0.5j * V) / (2.0 * np.sqrt(f_uv * f_vw * f_wu))


def triangle_visibility(u, v, w, *, eps: float = DEFAULT.purity_eps):
    """``nu = sqrt(((F_uv + F_vw + F_wu - 1)^2 + V^2/4) / (4 F_uv F_vw F_wu))``."""
    u, v, w = _interior_triple(u, v, w, eps)
    f_uv, f_vw, f_wu = _fidelities(u, v, w)
    V = triple_product(u, v, w)
    s = f_uv + f_vw + f_wu - 1.0
    return np.sqrt((s**2 + 0.25 * V**2) / (4.0 * f_uv * f_vw * f_wu))


def triangle_phase_visibility(
    u, v, w, *, eps: float = DEFAULT.purity_eps, visibility_floor: float = DEFAULT.visibility_floor
):
    """Mixed-state geometric phase and visibility of the triangle.

    The phase is ``atan2(-V/2, F_uv + F_vw + F_wu - 1)`` so that the quadrant
    follows the full trace rather than its tangent.
    """
    u, v, w = _interior_triple(u, v, w, eps)
    f_uv, f_vw, f_wu = _fidelities(u, v, w)
    V = triple_product(u, v, w)
    s = f_uv + f_vw + f_wu - 1.0
    nu = triangle_visibility(u, v, w, eps=eps)
    if np.any(nu < visibility_floor):
        raise PhaseUndefinedError("visibility below floor; phase undefined")
    return np.arctan2(-0.5 * V, s), nu


def visibility_from_rotation(delta, axis, u):
    """``nu = sqrt(cos^2(delta/2) + sin^2(delta/2) (u.m)^2)``."""
    delta = np.asarray(delta, dtype=float)
    um = _dot(np.asarray(u, float), np.asarray(axis, float))
    return np.sqrt(np.cos(delta / 2) ** 2 + np.sin(delta / 2) ** 2 * um**2)


# -- pure states and fixed-radius shells -------------------------------------


def _unit(x):
    x = np.asarray(x, dtype=float)
    n = np.linalg.norm(x, axis=-1)
    return x / np.where(n > 0, n, 1.0)[..., None]


def _mu(n1, n2, n3):
    return 1.0 + _dot(n1, n2) + _dot(n2, n3) + _dot(n3, n1)


def _require_unit(*ns, tol=DEFAULT.normalization):
    out = []
    for n in ns:
        n = np.asarray(n, dtype=float)
        if n.shape[-1:] != (3,) or np.any(np.abs(np.linalg.norm(n, axis=-1) - 1.0) > tol):
            raise ValidationError("pure-state formulas need unit vectors")
        out.append(n)
    return out


def solid_angle_mu(n1, n2, n3):
    """``mu = 1 + n1.n2 + n2.n3 + n3.n1``."""
    return _mu(*_require_unit(n1, n2, n3))


def solid_angle_phase(n1, n2, n3):
    """Pure-state phase and oriented solid angle of a spherical triangle.

    ``tan(Phi) = -n1.(n2 x n3) / mu`` with ``Phi = atan2(-V, mu)`` and
    ``Omega = -2 Phi``.  Returns ``(Phi, Omega)``.
    """
    n1, n2, n3 = _require_unit(n1, n2, n3)
    for x, y in ((n1, n2), (n2, n3), (n3, n1)):
        if np.any(1.0 + _dot(x, y) <= 0.0):
            raise DegenerateInputError("antipodal pair of pure states")
    mu = _mu(n1, n2, n3)
    V = triple_product(n1, n2, n3)
    if np.any((mu == 0.0) & (V == 0.0)):
        raise DegenerateInputError("degenerate spherical triangle (mu = V = 0)")
    phase = np.arctan2(-V, mu)
    return phase, -2.0 * phase


def solid_angle_cos(n1, n2, n3):
    """Both forms of ``cos(Omega/2)``: half-angle cosines and the ``mu`` form."""
    n1, n2, n3 = _require_unit(n1, n2, n3)
    c12, c23, c31 = (np.sqrt(0.5 * (1.0 + _dot(x, y))) for x, y in ((n1, n2), (n2, n3), (n3, n1)))
    half_angle = (c12**2 + c23**2 + c31**2 - 1.0) / (2.0 * c12 * c23 * c31)
    mu_form = _mu(n1, n2, n3) / np.sqrt(
        2.0 * (1.0 + _dot(n1, n2)) * (1.0 + _dot(n2, n3)) * (1.0 + _dot(n3, n1))
    )
    return half_angle, mu_form


def pure_visibility(n1, n2, n3):
    """``sqrt((mu^2 + V^2) / (2 (1 + n1.n2)(1 + n2.n3)(1 + n3.n1)))``; equals 1 identically."""
    n1, n2, n3 = _require_unit(n1, n2, n3)
    mu = _mu(n1, n2, n3)
    V = triple_product(n1, n2, n3)
    return np.sqrt(
        (mu**2 + V**2) / (2.0 * (1.0 + _dot(n1, n2)) * (1.0 + _dot(n2, n3)) * (1.0 + _dot(n3, n1)))
    )


def _check_radius(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0) or np.any(r > 1.0):
        raise ValidationError("radius must lie in (0, 1]")
    return r


def fixed_radius_phase(n1, n2, n3, r):
    """Uhlmann phase for vertices ``r n_i``: ``tan(Phi) = -r^3 V / (4(1 - r^2) + r^2 mu)``."""
    n1, n2, n3 = _require_unit(n1, n2, n3)
    r = _check_radius(r)
    V = triple_product(n1, n2, n3)
    return np.arctan2(-(r**3) * V, 4.0 * (1.0 - r**2) + r**2 * _mu(n1, n2, n3))


def fixed_radius_tan_mu_form(n1, n2, n3, r):
    """``-r^3 mu tan(Omega/2) / (4(1 - r^2) + r^2 mu)``."""
    n1, n2, n3 = _require_unit(n1, n2, n3)
    r = _check_radius(r)
    mu = _mu(n1, n2, n3)
    _, omega = solid_angle_phase(n1, n2, n3)
    return -(r**3) * mu * np.tan(omega / 2) / (4.0 * (1.0 - r**2) + r**2 * mu)


def slater_denominator(mu, r, *, corrected: bool = False):
    """``4 + (mu - 10) r^2 + 6 r^4``; ``corrected`` replaces ``6 r^4`` by ``6 r^2``."""
    r = np.asarray(r, dtype=float)
    return 4.0 + (mu - 10.0) * r**2 + 6.0 * (r**2 if corrected else r**4)


def slater_tan(n1, n2, n3, r, *, corrected: bool = False):
    """Published fixed-radius formula ``-r^3 mu tan(Omega/2) / (4 + (mu - 10) r^2 + 6 r^4)``.

    Kept verbatim as a comparison target; it disagrees with the matrix
    holonomy for ``0 < r < 1``.
    """
    n1, n2, n3 = _require_unit(n1, n2, n3)
    r = _check_radius(r)
    mu = _mu(n1, n2, n3)
    _, omega = solid_angle_phase(n1, n2, n3)
    den = slater_denominator(mu, r, corrected=corrected)
    if np.any(np.abs(den) < 1e-15):
        warnings.warn("Slater denominator vanishes", RuntimeWarning)
    return -(r**3) * mu * np.tan(omega / 2) / den


def slater_phase(n1, n2, n3, r, *, corrected: bool = False):
    """Phase from :func:`slater_tan`, on the same branch convention as :func:`fixed_radius_phase`."""
    n1, n2, n3 = _require_unit(n1, n2, n3)
    r = _check_radius(r)
    mu = _mu(n1, n2, n3)
    den = slater_denominator(mu, r, corrected=corrected)
    if np.any(np.abs(den) < 1e-15):
        warnings.warn("Slater denominator vanishes", RuntimeWarning)
    # mu tan(Omega/2) == V
    return np.arctan2(-(r**3) * triple_product(n1, n2, n3), den)


def interferometric_phase(omega, r):
    """Interferometric mixed-state phase ``tan(Phi) = -r tan(Omega/2)``."""
    omega = np.asarray(omega, dtype=float)
    r = _check_radius(r)
    if np.any(np.abs(np.cos(omega / 2)) < 1e-15):
        warnings.warn("Omega = pi: tan(Omega/2) is singular", RuntimeWarning)
    return np.arctan2(-r * np.sin(omega / 2), np.cos(omega / 2))


def phase_ratio(mu, r):
    """``tan(Phi_Uhlmann) / tan(Phi_int) = r^2 mu / (r^2 mu + 4 (1 - r^2))``."""
    r = np.asarray(r, dtype=float)
    return r**2 * mu / (r**2 * mu + 4.0 * (1.0 - r**2))
