"""Exception types shared across the package."""

__all__ = [
    "Lp2DualError",
    "GridMismatchError",
    "InvalidSizeError",
    "SpecParseError",
    "ExponentError",
    "DegenerateInputError",
    "SingularGramError",
    "KernelSymmetryError",
]


class Lp2DualError(ValueError):
    """Base class for all errors raised by this package."""


class GridMismatchError(Lp2DualError):
    """Operands sampled on incompatible quadrature rules."""


class InvalidSizeError(Lp2DualError):
    """A rule or sample array has an unusable size."""


class SpecParseError(Lp2DualError):
    """A generator spec string could not be parsed."""


class ExponentError(Lp2DualError):
    """An exponent outside the supported range was given."""


class DegenerateInputError(Lp2DualError):
    """An operation received input it is undefined for (e.g. the zero function)."""


class SingularGramError(Lp2DualError):
    """The Gram determinant of the projection pair is numerically singular."""


class KernelSymmetryError(Lp2DualError):
    """A kernel violates the antisymmetry a ratio norm requires."""
