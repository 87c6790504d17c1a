"""Uhlmann mixed-state geometric phases of one qubit via Thomas rotations."""

from .bures import fidelity, geodesic_distance, geodesic_interpolate
from .errors import (
    ConvergenceError,
    DegenerateInputError,
    NumericalError,
    PhaseUndefinedError,
    PureStateError,
    ValidationError,
)
from .state import bloch_to_density, concurrence, sqrt_density
from .transport import HolonomyResult, polygon_holonomy, thomas_rotation, thomas_rotation_oracle
from .triangle import TriangleResult, solid_angle_phase, triangle_phase_visibility, triangle_rotation

__version__ = "0.1.0"
