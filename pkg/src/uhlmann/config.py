"""Default tolerances; all absolute, since every quantity in scope is O(1)."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-10
    unitary: float = 1e-10
    normalization: float = 1e-10
    purity_eps: float = 1e-9
    visibility_floor: float = 1e-12
    parallel: float = 1e-10
    cross_zero: float = 1e-14
    step_drift: float = 1e-2

    @classmethod
    def from_env(cls, environ=None) -> "Tolerances":
        """Override `hermitian`, `unitary`, `normalization` and `parallel` from UHLMANN_TOLERANCE."""
        environ = os.environ if environ is None else environ
        raw = environ.get("UHLMANN_TOLERANCE")
        if raw is None:
            return cls()
        t = float(raw)
        return replace(cls(), hermitian=t, unitary=t, normalization=t, parallel=t)


DEFAULT = Tolerances()


def thread_count(environ=None) -> int:
    environ = os.environ if environ is None else environ
    return max(1, int(environ.get("UHLMANN_THREADS", "1")))
