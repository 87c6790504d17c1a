"""One-qubit density matrices and their purifications.

A state is given by its Bloch vector ``u`` (shape ``(..., 3)``, ``|u| <= 1``)
with ``rho = (I + u.sigma)/2``.  Interior points are the strictly positive
states on which Uhlmann transport is defined; their canonical purification
is the positive root ``W = rho^(1/2)``.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT
from .errors import PureStateError, ValidationError
from .mat2q import (
    IDENTITY,
    dagger,
    det2,
    hermitian_deviation,
    pauli_dot,
    trace2,
)

_NORM_SLACK = 1e-12


def as_bloch(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape[-1:] != (3,):
        raise ValidationError(f"Bloch vectors must have a trailing axis of length 3, got {u.shape}")
    if not np.all(np.isfinite(u)):
        raise ValidationError("Bloch vector has non-finite entries")
    if np.any(np.linalg.norm(u, axis=-1) > 1.0 + _NORM_SLACK):
        raise ValidationError("Bloch vector lies outside the unit ball (|u| > 1)")
    return u


def require_interior(u, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Validate ``|u| <= 1 - eps``; transport formulas need strictly positive states."""
    u = as_bloch(u)
    if np.any(np.linalg.norm(u, axis=-1) > 1.0 - eps):
        raise PureStateError(f"state is pure or within {eps:g} of the Bloch sphere")
    return u


def concurrence(u) -> np.ndarray:
    """``C = sqrt(1 - |u|^2)``: concurrence of any purification of ``rho_u``."""
    u = np.asarray(u, dtype=float)
    return np.sqrt(np.clip(1.0 - np.sum(u * u, axis=-1), 0.0, None))


def rapidity(u):
    """Return ``(theta, direction)`` with ``tanh(theta) = |u|``.

    The direction of ``u = 0`` is taken as +z.
    """
    u = require_interior(u)
    r = np.linalg.norm(u, axis=-1)
    safe = np.where(r > 0, r, 1.0)
    direction = np.where((r > 0)[..., None], u / safe[..., None], np.array([0.0, 0.0, 1.0]))
    return np.arctanh(r), direction


def renormalize(u) -> np.ndarray:
    """``a = u / (1 + C_u) = tanh(theta_u / 2) u_hat``."""
    u = np.asarray(u, dtype=float)
    return u / (1.0 + concurrence(u))[..., None]


def bloch_to_density(u) -> np.ndarray:
    u = as_bloch(u)
    return 0.5 * (IDENTITY + pauli_dot(u))


def sqrt_density(u, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Positive square root ``((1 + C) I + u.sigma) / (2 sqrt(1 + C))``."""
    u = require_interior(u, eps)
    c = concurrence(u)
    return ((1.0 + c)[..., None, None] * IDENTITY + pauli_dot(u)) / (
        2.0 * np.sqrt(1.0 + c)
    )[..., None, None]


def inv_sqrt_density(u, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """``rho^(-1/2) = ((1 + C) I - u.sigma) / (C sqrt(1 + C))``."""
    u = require_interior(u, eps)
    c = concurrence(u)
    return ((1.0 + c)[..., None, None] * IDENTITY - pauli_dot(u)) / (
        c * np.sqrt(1.0 + c)
    )[..., None, None]


def purify(u, eps: float = DEFAULT.purity_eps) -> np.ndarray:
    """Canonical purification, the positive root of ``rho_u``."""
    return sqrt_density(u, eps)


def boost_spinor(theta, direction, *, tol: float = DEFAULT.normalization) -> np.ndarray:
    """Lorentz boost ``cosh(theta/2) I + sinh(theta/2) n.sigma`` in the spinor representation."""
    theta = np.asarray(theta, dtype=float)
    direction = np.asarray(direction, dtype=float)
    if np.any(np.abs(np.linalg.norm(direction, axis=-1) - 1.0) > tol):
        raise ValidationError("boost direction must be a unit vector")
    if np.any(theta < 0):
        raise ValidationError("rapidity must be non-negative")
    return np.cosh(theta / 2)[..., None, None] * IDENTITY + np.sinh(theta / 2)[
        ..., None, None
    ] * pauli_dot(direction)


def density_to_bloch(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    return np.stack(
        [
            2.0 * rho[..., 1, 0].real,
            2.0 * rho[..., 1, 0].imag,
            (rho[..., 0, 0] - rho[..., 1, 1]).real,
        ],
        axis=-1,
    )


def purification_to_bloch(W, *, tol: float = DEFAULT.normalization):
    """Reduced state of a purification.

    Returns ``(u, C)`` where ``W W^dagger = (I + u.sigma)/2`` and ``C = |ad - bc|``
    for ``W = (1/sqrt 2) [[a, b], [c, d]]``, i.e. ``C = 2 |det W|``.
    """
    W = np.asarray(W, dtype=complex)
    rho = W @ dagger(W)
    if np.any(np.abs(trace2(rho).real - 1.0) > tol):
        raise ValidationError("purification is not normalized (Tr W W^dagger != 1)")
    return density_to_bloch(rho), 2.0 * np.abs(det2(W))


def is_parallel(W1, W2, *, tol: float = DEFAULT.parallel) -> bool:
    """Uhlmann parallelity: ``W1^dagger W2`` Hermitian with strictly positive spectrum."""
    M = dagger(np.asarray(W1, dtype=complex)) @ np.asarray(W2, dtype=complex)
    if hermitian_deviation(M) > tol:
        return False
    return bool(np.linalg.eigvalsh(0.5 * (M + dagger(M))).min() > 0.0)
