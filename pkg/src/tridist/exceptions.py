"""Exception types raised across the package.

All of them derive from ``ValueError`` so callers that only care about
"bad input" can catch one thing.
"""


class TridistError(ValueError):
    """Base class for every error raised by tridist."""


class DegenerateTriangle(TridistError):
    pass


class InvalidAngles(TridistError):
    pass


class DomainError(TridistError):
    """Argument lies outside the support where a formula is defined."""


class ConstructionError(TridistError):
    """A piecewise function failed its own consistency checks when built."""


class EmptySample(TridistError):
    pass


class InvalidScale(TridistError):
    pass


class NotACdf(TridistError):
    """A derived cross-distance function does not behave like a CDF."""


class ShapeMismatch(TridistError):
    pass


class UnsupportedConfiguration(TridistError):
    pass


class SpecParseError(TridistError):
    """A textual triangle/config specification could not be parsed."""
