"""Exception hierarchy.

Validation problems derive from :class:`ParameterError` (a ``ValueError``);
numerical failures derive from :class:`NumericalError` (an
``ArithmeticError``).  The CLI maps the two families to distinct exit codes.
"""


class QAreaError(Exception):
    """Base class for all errors raised by the package."""

    def __init__(self, message="", **context):
        super().__init__(message)
        self.context = dict(context)
        for key, value in context.items():
            setattr(self, key, value)


class ParameterError(QAreaError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(ParameterError):
    """A radius or exponent lies outside the domain of a formula."""


class GeometryError(ParameterError):
    """A polygon is degenerate or self-intersecting."""


class NumericalError(QAreaError, ArithmeticError):
    """A computation could not produce a trustworthy number."""


class EvaluationError(NumericalError):
    """A sampled field value was not finite (``theta`` holds the angle)."""


class DivergenceError(NumericalError):
    """The radial integral is infinite."""


class ConvergenceError(NumericalError):
    """Tolerance not reached; ``estimate`` holds the best value found."""


class LineSearchError(NumericalError):
    """Backtracking failed to find a descent step; ``energy`` is the last value."""
