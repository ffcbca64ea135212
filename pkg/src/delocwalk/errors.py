"""Exception types raised across the package."""


class WalkError(Exception):
    """Base class for all errors raised by delocwalk."""


class DegenerateTheta(WalkError, ValueError):
    """Coin angle at one of the excluded values pi/2, pi, 3pi/2."""


class OutOfRange(WalkError, ValueError):
    """Parameter outside its admissible range."""


class ResourceLimit(WalkError, MemoryError):
    """Requested lattice window exceeds the configured cell cap."""


class GridTooSmall(WalkError, ValueError):
    """Momentum grid too coarse for the requested propagation."""


class NotNormalizable(WalkError, ValueError):
    """Coefficient functions have zero L2 mass."""


class IntegerA(WalkError, ValueError):
    """Case 1 shift parameter is an integer."""


class OutOfSupport(WalkError, ValueError):
    """Evaluation point outside the open support (-|c|, |c|)."""


class NoConvergence(WalkError, ArithmeticError):
    """Adaptive quadrature exceeded its refinement depth."""
