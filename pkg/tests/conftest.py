import numpy as np
import pytest
from hypothesis import strategies as st


def random_interior(rng, n, rmax=0.999):
    """Uniform samples from the ball of radius ``rmax``."""
    d = rng.normal(size=(n, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    r = rmax * rng.uniform(size=n) ** (1 / 3)
    return d * r[:, None]


def random_unit(rng, n):
    d = rng.normal(size=(n, 3))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def eig_sqrt(M):
    """Square root through an eigendecomposition; independent of the closed form."""
    w, V = np.linalg.eigh(M)
    return V @ np.diag(np.sqrt(np.clip(w, 0, None))) @ V.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(20031027)


_coord = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


@st.composite
def interior_vectors(draw, rmax=0.99):
    x = np.array([draw(_coord) for _ in range(3)])
    n = np.linalg.norm(x)
    if n > rmax:
        x *= rmax / n
    return x


@st.composite
def unit_vectors(draw):
    x = np.array([draw(_coord) for _ in range(3)])
    n = np.linalg.norm(x)
    if n < 1e-3:
        return np.array([0.0, 0.0, 1.0])
    return x / n


@st.composite
def quaternions(draw):
    return np.array([draw(st.floats(-3.0, 3.0)) for _ in range(4)])


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
