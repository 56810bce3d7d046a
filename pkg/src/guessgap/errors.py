"""Exception types raised across the package.

Everything derives from GuessgapError so callers can catch the whole
family; most data-validation errors are also ValueErrors.
"""


class GuessgapError(Exception):
    """Base class for all package errors."""


class DistributionError(GuessgapError, ValueError):
    """Base for invalid probability data."""


class NegativeEntry(DistributionError):
    """An entry is more negative than round-off tolerance allows."""


class NotNormalized(DistributionError):
    """Entries do not sum to 1 within tolerance."""


class ShapeMismatch(DistributionError):
    """Data length or array shape disagrees with the declared shape."""


class SameVariable(GuessgapError, ValueError):
    """A pair marginal was requested for a variable against itself."""


class NonPositiveConcentration(GuessgapError, ValueError):
    """Dirichlet concentration must be strictly positive."""


class EmptyInput(GuessgapError, ValueError):
    """An operation received an empty sequence."""


class InvalidDistribution(DistributionError):
    """A probability table failed validation inside a metric."""


class OutOfRange(GuessgapError, ValueError):
    """A scalar argument fell outside its documented interval."""


class EpsilonOutOfRange(OutOfRange):
    """The leak parameter is outside the admissible interval."""


class BadRange(GuessgapError, ValueError):
    """A sweep range is empty, reversed, or outside the admissible interval."""


class VerificationFailed(GuessgapError):
    """Analyzed and closed-form reports disagree beyond tolerance.

    Carries the comparison report (``.report``) and the largest observed
    deviation (``.max_deviation``).
    """

    def __init__(self, message, report=None, max_deviation=None):
        super().__init__(message)
        self.report = report
        self.max_deviation = max_deviation


class TooLarge(GuessgapError, ValueError):
    """Exhaustive enumeration was requested beyond its size limits."""


class NoFeasiblePoint(GuessgapError):
    """No candidate satisfied the guessing-probability margin constraint."""


class ParseError(GuessgapError, ValueError):
    """A distribution file is not well-formed."""


class WrongOrder(ParseError):
    """A distribution file declares an axis order other than bob,alice,eve."""


class ValidationError(GuessgapError, ValueError):
    """A parsed distribution failed validation."""


class IoError(GuessgapError):
    """Reading or writing an artifact file failed."""


class TooFewRows(GuessgapError, ValueError):
    """A chart needs at least two rows."""


class UsageError(GuessgapError, ValueError):
    """Bad command-line arguments."""
