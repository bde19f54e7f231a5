"""Exception hierarchy shared by all wildcycle modules."""


class WildcycleError(Exception):
    """Base class for all domain errors raised by this package."""


class NotStarShaped(WildcycleError):
    """An eigenvalue is not of the form e0 + e2*z^2 with e2 purely imaginary.

    Raised when exponent recovery fails, which signals that the input is not
    strictly specializable in the operative sense.
    """


class DenominatorVanishes(WildcycleError):
    """A parameter denominator vanishes at the requested evaluation point."""


class InsufficientTruncation(WildcycleError):
    """An operation cannot certify the requested number of series digits.

    Carries ``required`` when a sufficient input truncation is known.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class SingularGauge(WildcycleError):
    """The leading coefficient matrix of a gauge is not invertible."""


class SpectrumNotSplit(WildcycleError):
    """A leading matrix has a single eigenvalue group, nothing to separate."""


class UnsupportedAlgebraicExtension(WildcycleError):
    """Eigenvalues live outside the current cyclotomic field.

    ``min_poly`` holds a rendering of the offending minimal polynomial.
    """

    def __init__(self, message, min_poly=None):
        super().__init__(message)
        self.min_poly = min_poly


class NonTerminating(WildcycleError):
    """The internal bound on decomposition steps was exceeded (a bug)."""


class ParseError(WildcycleError):
    """Expression or document syntax error with position information."""

    def __init__(self, message, line=None, column=None, expected=None):
        pos = "" if line is None else f" at line {line}, column {column}"
        super().__init__(message + pos)
        self.line = line
        self.column = column
        self.expected = expected or []


class UnsupportedExponent(ParseError):
    """A power with a non-integer exponent (use the ramification header)."""


class InternalInvariantError(WildcycleError):
    """An internal consistency check failed; indicates a bug, not bad input."""
