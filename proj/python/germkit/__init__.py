"""Normal embedding analysis of real surface germs (R^2, 0) -> (R^4, 0).

Germs are given as text: four comma-separated polynomials in x and y.
Report-returning functions give plain dicts shaped like the JSON report.
"""

from ._germkit import (
    SCHEMA_VERSION,
    DegenerateError,
    GermkitError,
    NumericError,
    ParseError,
    PreconditionError,
    ShapeError,
    TruncationError,
    __version__,
    analyze,
    arc_test,
    classify_2jet,
    corank,
    knot,
    polar,
    prenormalize,
    tangent_cone,
)

__all__ = [
    "SCHEMA_VERSION",
    "DegenerateError",
    "GermkitError",
    "NumericError",
    "ParseError",
    "PreconditionError",
    "ShapeError",
    "TruncationError",
    "analyze",
    "arc_test",
    "classify_2jet",
    "corank",
    "knot",
    "polar",
    "prenormalize",
    "tangent_cone",
]
