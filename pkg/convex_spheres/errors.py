"""Exception hierarchy for convex-spheres.

Failures that are data (axiom violations, mismatched coefficients, per-check
verdicts) live in report dataclasses instead; these exceptions are for inputs
an operation cannot work with at all.
"""

from typing import Optional


class ConvexSpheresError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ConvexSpheresError):
    """Malformed or schema-violating input document."""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ConfigError(ConvexSpheresError):
    """Run configuration outside the allowed range."""


class ResourceLimit(ConvexSpheresError):
    """A construction would exceed a size cap."""


# Geometry

class GeometryError(ConvexSpheresError):
    """A geometry that cannot be constructed as given."""


class GroundSetTooLarge(ResourceLimit, GeometryError):
    """Ground set beyond what bitmask enumeration supports."""


class InvalidGeometry(GeometryError):
    """The closure fails the convex-geometry axioms."""

    def __init__(self, report):
        first = report.violations[0] if report.violations else None
        detail = f": {first.describe()}" if first else ""
        super().__init__(f"not a convex geometry ({len(report.violations)} violations){detail}")
        self.report = report


# Posets

class PosetError(ConvexSpheresError):
    pass


class NotComparable(PosetError):
    pass


class No0Hat(PosetError):
    pass


class No1Hat(PosetError):
    pass


class NotALattice(PosetError):
    pass


class NotGraded(PosetError):
    pass


# Complexes

class ComplexError(ConvexSpheresError):
    pass


class FaceNotInComplex(ComplexError):
    pass


class VertexCollision(ComplexError):
    pass


# Spheres

class SphereError(ConvexSpheresError):
    pass


class NotProperElement(SphereError):
    pass


class ChainNotInL(SphereError):
    pass


class ChainMustEndAtTop(SphereError):
    pass


# Enriched functions

class EnrichedError(ConvexSpheresError):
    pass


class NotAMultichain(EnrichedError):
    pass


class NotExtremal(EnrichedError):
    pass


class ZeroPolynomial(ConvexSpheresError):
    pass
