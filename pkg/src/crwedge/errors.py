"""Exception types shared across the toolkit."""


class CRWedgeError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(CRWedgeError):
    """Input data is malformed (non-finite samples, wrong shape, ...)."""


class ConfigurationError(CRWedgeError):
    """A configuration value is out of its supported range (grid too small, ...)."""


class DomainError(CRWedgeError):
    """A point lies outside the mathematical domain of the operation."""


class AccuracyError(CRWedgeError):
    """The requested quantity cannot be produced at the required accuracy.

    Carries a ``magnitude`` attribute with the offending error estimate.
    """

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class HypothesisError(CRWedgeError):
    """A theorem hypothesis required by the operation is violated.

    ``clause`` names the violated hypothesis.
    """

    def __init__(self, message, clause=None):
        super().__init__(message)
        self.clause = clause or message


class ConvergenceError(CRWedgeError):
    """Iteration did not converge within the allowed number of steps."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NoContractionError(ConvergenceError):
    """The fixed-point iteration is diverging; the data is too large."""


class ConstructionError(CRWedgeError):
    """A constructive step failed; ``samples`` lists the violating grid samples."""

    def __init__(self, message, samples=None):
        super().__init__(message)
        self.samples = samples


class DegenerateDiscError(CRWedgeError):
    """The constructed disc is degenerate (no transversality / identically zero)."""


class ScenarioError(CRWedgeError):
    """Scenario file failed to parse or validate."""


class ExprError(CRWedgeError):
    """Base class for defining-expression errors."""


class ExprSyntaxError(ExprError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ExprTypeError(ExprError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ExprNameError(ExprError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
