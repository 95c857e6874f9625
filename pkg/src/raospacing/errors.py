"""Exception types raised by raospacing."""


class RaoSpacingError(Exception):
    """Base class for statistical-computation failures."""


class DegenerateVarianceError(RaoSpacingError):
    """Moments imply a non-positive variance."""


class ApproximationError(RaoSpacingError):
    """The truncated expansion cannot deliver the requested quantity."""


class QuadratureError(RaoSpacingError):
    """Exact-density quadrature did not converge."""


class UnsupportedRangeError(RaoSpacingError, ValueError):
    """Arguments fall outside the range a routine is built for."""
