"""Exception and warning types raised by the library."""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class PureStateError(ValidationError):
    """A strictly positive (mixed) state was required but a pure state was given."""


class DegenerateInputError(ValidationError):
    """Input sits on a singular point of the formula (zero matrix, pole, antipodal pair)."""


class NumericalError(ArithmeticError):
    """A well-posed computation produced an unusable result."""


class PhaseUndefinedError(NumericalError):
    """Visibility is below the floor, so the phase carries no information."""


class ConvergenceError(NumericalError):
    """A refinement sequence failed to converge."""


class NonUniqueGeodesicWarning(RuntimeWarning):
    pass


class CoarseStepWarning(RuntimeWarning):
    pass
