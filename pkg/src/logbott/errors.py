"""Exception taxonomy shared across the package."""


class LogBottError(Exception):
    """Base class for domain-level failures (as opposed to bad input)."""


class PresentationError(LogBottError):
    """A ring presentation is malformed, non-terminating, or non-confluent."""


class RingMismatchError(LogBottError):
    """Two values from different ring presentations were combined."""


class NonUnitError(LogBottError):
    """Inversion of a graded class whose degree-0 part vanishes.

    At the determinant level this is exactly a failure of Bott
    nondegeneracy: the constant term of det(A + curvature) is det(A).
    """


class NondegeneracyError(LogBottError):
    """A normal eigenvalue is zero, so the localized residue is undefined."""


class IncompleteTableError(LogBottError):
    """A top-degree normal monomial is missing from the integration table."""


class ConsistencyError(LogBottError):
    """Two independent computations of the same quantity disagree."""


class TubeError(LogBottError):
    """Newton inversion failed to parametrize the polytube (radii too large)."""


class ConstraintError(ValueError):
    """Catalog parameters violate an admissibility inequality."""
