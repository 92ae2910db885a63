"""Exception types raised across the package."""


class StablevorError(Exception):
    """Base class for all package errors."""


class GeometryError(StablevorError):
    pass


class OpenBoundary(GeometryError):
    """Boundary loop does not close up."""


class SelfIntersecting(GeometryError):
    """Boundary loop crosses itself."""


class CoincidentCircles(GeometryError):
    """Two circles share center and radius; intersection is not a point set."""


class NotPolygonal(StablevorError):
    """Operation requires a polygonal convex metric."""


class DegenerateBisector(StablevorError):
    """Site pair is parallel to a unit-ball edge; bisector has interior."""


class DuplicateSites(StablevorError):
    pass


class UnknownSite(StablevorError):
    pass


class MetricMismatch(StablevorError):
    """Objects built under different metrics were combined."""


class QuadraticNoRoot(StablevorError):
    """Final trapezoid equation has no root in range (internal invariant)."""


class TopologyError(StablevorError):
    """Glued fragments do not assemble into closed loops."""


class InfeasibleState(StablevorError):
    """No site has a finite radius estimate; diagram cannot grow."""


class GenerationFailure(StablevorError):
    """Random instance generation exhausted its rejection budget."""


class BOutOfRange(StablevorError):
    """Two-site fixture separation is too large for a shared edge."""


class ParseError(StablevorError):
    """Instance or diagram file does not match the expected format."""


class VerificationFailure(StablevorError):
    """A computed diagram failed an invariant check."""
