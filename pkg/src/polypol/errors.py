"""Exception hierarchy shared by all polypol modules."""


class PolypolError(Exception):
    """Base class for every error raised by this package."""


class TierError(PolypolError):
    """An exact-tier operation was requested on float-tier data."""


class ZeroDenominator(PolypolError):
    """A rational function was built with a zero denominator."""


class DegenerateResultant(PolypolError):
    """A resultant vanished identically; reparametrize the arc."""


class DegenerateArc(PolypolError):
    """An arc with a constant parametrization cannot be implicitized."""


class RegionFormatError(PolypolError):
    """Malformed region JSON or invalid builder input."""


class QuadratureError(PolypolError):
    """Adaptive quadrature exhausted its panel budget.

    Carries the best value and the achieved error estimate.
    """

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class KernelOnBoundary(PolypolError):
    """The moving line 1 - u*x - v*y meets the region boundary.

    Signals proximity to the singular support of the transform; the
    boundary integrals are not defined there.
    """

    def __init__(self, message, arc_index=None, parameter=None):
        super().__init__(message)
        self.arc_index = arc_index
        self.parameter = parameter


class BranchDomainError(PolypolError):
    """A closed-form evaluation left the domain of its real branch."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class NonUniqueAdjoint(PolypolError):
    """The adjoint interpolation system has solution dimension != 1."""

    def __init__(self, message, dimension=None):
        super().__init__(message)
        self.dimension = dimension


class NonNormalCrossing(PolypolError):
    """Boundary branches at a vertex are tangential or singular."""


class InvariantViolation(PolypolError):
    """An internal cross-check that should always pass has failed."""


class ExponentProbeError(PolypolError):
    """Too few usable samples along an exponent-probe ray.

    ``usable`` lists the (epsilon, value) pairs that evaluated cleanly.
    """

    def __init__(self, message, usable=()):
        super().__init__(message)
        self.usable = list(usable)
