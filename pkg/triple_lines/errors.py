"""
Error hierarchy

Every failure raised by the library derives from TripleLinesError and carries
the process exit code the command-line front end maps it to.
"""

from typing import Optional


class TripleLinesError(Exception):
    """Base class for all library errors"""

    exit_code = 1


class ParseError(TripleLinesError, ValueError):
    """Malformed polynomial, field element, line or configuration input"""

    exit_code = 2

    def __init__(self, message: str, position: Optional[int] = None):
        self.message = message
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariableError(ParseError):
    """Identifier that is not a variable of the target ring"""

    def __init__(self, name: str, position: Optional[int] = None):
        self.name = name
        super().__init__(f"unknown variable '{name}'", position)


class FieldMismatchError(ParseError):
    """An element of Q(w) where only rationals are allowed"""


class FieldDivisionError(TripleLinesError, ZeroDivisionError):
    """Division by zero in Q or Q(w)"""


class RingMismatchError(TripleLinesError, ValueError):
    """Operands live in different polynomial rings"""


class ResourceLimitError(TripleLinesError):
    """A configured computational budget was exhausted"""

    exit_code = 4


class GroebnerBudgetError(ResourceLimitError):
    """Buchberger exceeded its pair, basis size or quotient budget"""


class FactorizationRangeError(ResourceLimitError):
    """Eisenstein integer too large for trial division"""


class NotZeroDimensionalError(TripleLinesError):
    """Solving was requested for an ideal with infinitely many solutions"""

    def __init__(self, message: str, context: Optional[str] = None):
        self.context = context
        if context:
            message = f"{message} [{context}]"
        super().__init__(message)


class TriangularityError(TripleLinesError):
    """Back-substitution failed even after random changes of coordinates"""


class GeometryError(TripleLinesError, ValueError):
    """Invalid projective input"""

    exit_code = 2


class RankDeficientError(GeometryError):
    """Two points that do not span a line"""


class NonDecomposableError(GeometryError):
    """Ten coordinates that violate the Grassmann-Pluecker relations"""


class PointOnLineError(GeometryError):
    """Plane direction chosen on the line itself"""


class InvalidCubicError(GeometryError):
    """Polynomial that is not a nonzero cubic form in five variables"""


class LineNotOnCubicError(TripleLinesError):
    """The line is not contained in the cubic threefold"""

    exit_code = 3


class NotSecondTypeError(TripleLinesError):
    """Operation needs a line of the second type"""


class SingularCubicError(TripleLinesError):
    """Refusal to run on a singular cubic without the override flag"""

    exit_code = 6


class SingularityEvidenceError(TripleLinesError):
    """Line data that cannot occur on a smooth cubic"""


class InternalConsistencyError(TripleLinesError):
    """Two independent computations disagree"""


class TheoremCounterexampleError(TripleLinesError):
    """A line where triple-ness and the M(X) Jacobian rank disagree"""

    exit_code = 7

    def __init__(self, message: str, lines: Optional[list] = None):
        self.lines = lines or []
        super().__init__(message)
