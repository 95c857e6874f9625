"""Rao's spacing test of circular uniformity for any sample size.

P-values come from a Gram-Charlier expansion built on exact null moments of
the statistic; an exact density path covers small samples.
"""

from .errors import (
    ApproximationError,
    DegenerateVarianceError,
    QuadratureError,
    RaoSpacingError,
    UnsupportedRangeError,
)
from .exact import exact_cdf, exact_pdf, irwin_hall_pdf
from .gramcharlier import CdfApproximation, approximation, cdf, critical_value, p_value
from .moments import (
    CoefficientTable,
    CumulantSet,
    MomentSet,
    build_coefficients,
    cumulants,
    moment_set,
    raw_moment,
)
from .spacings import (
    AngleSample,
    SpacingVector,
    TestResult,
    ingest,
    read_angle_file,
    spacing_test,
    spacings,
    statistic,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSample",
    "ApproximationError",
    "CdfApproximation",
    "CoefficientTable",
    "CumulantSet",
    "DegenerateVarianceError",
    "MomentSet",
    "QuadratureError",
    "RaoSpacingError",
    "SpacingVector",
    "TestResult",
    "UnsupportedRangeError",
    "approximation",
    "build_coefficients",
    "cdf",
    "critical_value",
    "cumulants",
    "exact_cdf",
    "exact_pdf",
    "ingest",
    "irwin_hall_pdf",
    "moment_set",
    "p_value",
    "raw_moment",
    "read_angle_file",
    "spacing_test",
    "spacings",
    "statistic",
]
