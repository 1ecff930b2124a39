"""Exception types raised by the numerical routines."""


class KNTorusError(Exception):
    """Base class for all package-specific errors."""


class PoleProximityError(KNTorusError):
    """Evaluation point is inside the exclusion disk of a pole/puncture."""


class BadContourError(KNTorusError):
    """Integration contour violates its enclosed-singularity precondition."""


class PoleOnPathError(KNTorusError):
    """An integration segment passes too close to a pole."""


class DegenerateModuliError(KNTorusError):
    """A moduli expression degenerates (division by a vanishing difference)."""


class NonIntegerWindingError(KNTorusError):
    """A winding-number quadrature did not land near an integer."""


class WindowViolationError(KNTorusError):
    """A finiteness window for an operator sum was too small; must never fire."""
