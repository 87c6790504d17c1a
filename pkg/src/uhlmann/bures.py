"""Bures fidelity and geodesics on the Bloch ball.

Embedding an interior state as ``(u1, u2, u3, C)`` puts the Bloch ball on the
open upper hemisphere of the unit 3-sphere.  The Bures metric is a quarter of
the round metric there, so ``F(u, v) = cos^2(Delta/2)`` with ``Delta`` the
great-circle angle, and Bures geodesics are great-circle arcs.
"""

from __future__ import annotations

import warnings

import numpy as np

from .config import DEFAULT
from .errors import DegenerateInputError, NonUniqueGeodesicWarning
from .state import as_bloch, concurrence, require_interior


def fidelity(u, v) -> np.ndarray:
    """``F(u, v) = (1 + u.v + C_u C_v) / 2``; vectorized over leading axes."""
    u = as_bloch(u)
    v = as_bloch(v)
    f = 0.5 * (1.0 + np.sum(u * v, axis=-1) + concurrence(u) * concurrence(v))
    return np.clip(f, 0.0, 1.0)


def fidelity_renormalized(a, b) -> np.ndarray:
    """Fidelity from renormalized vectors: ``1 - |a - b|^2 / ((1 + |a|^2)(1 + |b|^2))``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = a - b
    return 1.0 - np.sum(d * d, axis=-1) / (
        (1.0 + np.sum(a * a, axis=-1)) * (1.0 + np.sum(b * b, axis=-1))
    )


def hemisphere_point(u) -> np.ndarray:
    u = as_bloch(u)
    return np.concatenate([u, concurrence(u)[..., None]], axis=-1)


def geodesic_distance(u, v) -> float:
    """Bures geodesic angle ``Delta = 2 arccos(sqrt F)`` in ``[0, pi]``.

    For orthogonal pure states (``F = 0``) the geodesic is not unique; ``pi``
    is returned with a :class:`NonUniqueGeodesicWarning`.
    """
    f = fidelity(u, v)
    if np.any(f == 0.0):
        warnings.warn("antipodal pure states: geodesic is not unique", NonUniqueGeodesicWarning)
    d = 2.0 * np.arccos(np.sqrt(f))
    return float(d) if np.ndim(d) == 0 else d


def geodesic_interpolate(u, v, t, *, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Point at fraction ``t`` of the arc length along the geodesic from ``u`` to ``v``.

    ``t`` may be an array; the result then has shape ``t.shape + (3,)``.
    """
    u = require_interior(u, eps)
    v = require_interior(v, eps)
    t = np.asarray(t, dtype=float)
    x = hemisphere_point(u)
    y = hemisphere_point(v)
    cos_d = np.clip(float(x @ y), -1.0, 1.0)
    if cos_d <= -1.0 + 1e-15:
        raise DegenerateInputError("antipodal endpoints have no unique geodesic")
    delta = np.arccos(cos_d)
    if delta < 1e-15:
        return np.broadcast_to(u, t.shape + (3,)).copy()
    s = np.sin(delta)
    wx = np.sin((1.0 - t) * delta) / s
    wy = np.sin(t * delta) / s
    p = wx[..., None] * x + wy[..., None] * y
    assert np.all(p[..., 3] > 0.0), "geodesic left the upper hemisphere"
    out = p[..., :3]
    # pin the endpoints exactly
    out = np.where((t == 0.0)[..., None], u, out)
    out = np.where((t == 1.0)[..., None], v, out)
    return out


def geodesic_points(u, v, n: int) -> np.ndarray:
    """``n + 1`` points spaced equally in arc length from ``u`` to ``v`` inclusive."""
    if n < 1:
        raise ValueError("need at least one segment")
    return geodesic_interpolate(u, v, np.linspace(0.0, 1.0, n + 1))
