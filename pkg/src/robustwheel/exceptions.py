"""Exception hierarchy.

Every error raised on purpose by the package derives from ``RobustWheelError``
so callers (and the CLI) can separate validation problems from I/O failures.
"""


class RobustWheelError(Exception):
    """Base class for all package errors."""


class ValidationError(RobustWheelError, ValueError):
    """Input violates a documented precondition.

    ``violations`` collects every problem found, not just the first.
    """

    def __init__(self, message, violations=None):
        self.violations = list(violations or [])
        if self.violations:
            message = message + ":\n  - " + "\n  - ".join(self.violations)
        super().__init__(message)


class ParseError(RobustWheelError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


# design space
class DisjointChildCircles(ValidationError):
    """Child circles leave parent-circle segments exposed on the rim."""


class InfeasibleBounds(ValidationError):
    pass


class NoFeasibleN(ValidationError):
    """No child-circle count clears the overhang for the given geometry."""


class DegenerateGeometry(ValidationError):
    pass


# taguchi
class ArityError(ValidationError):
    pass


class NonPositiveResponse(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


# gra
class DegenerateColumn(UserWarning):
    """Attribute column is constant; its normalized values are set to 1.0."""


class WeightError(ValidationError):
    pass


# anova
class NegativeErrorSS(RobustWheelError, ArithmeticError):
    pass


class EmptySignificantSet(ValidationError):
    pass


# ingestion
class MissingRun(ValidationError):
    pass


class DuplicateRun(ValidationError):
    pass


class NonNumeric(ValidationError):
    pass


class IoError(RobustWheelError, OSError):
    def __init__(self, message, path=None):
        self.path = path
        if path is not None:
            message = f"{message}: {path}"
        super().__init__(message)
