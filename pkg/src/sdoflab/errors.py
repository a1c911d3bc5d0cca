"""Exception types shared across the package."""


class SdofLabError(Exception):
    """Base class for all errors raised by sdoflab."""


class InvalidMatrix(SdofLabError):
    """A matrix argument contains non-finite entries or has an unusable shape."""


class DimensionMismatch(SdofLabError):
    """Operands live in incompatible spaces."""


class Unsolvable(SdofLabError):
    """A constrained solve has no solution within tolerance."""


class InfeasibleAllocation(SdofLabError):
    """A jamming allocation asks for more dimensions than the channel offers."""


class NumericalFailure(SdofLabError):
    """A numerical routine produced an unusable result."""


class InsufficientData(SdofLabError):
    """Not enough samples or grid points for the requested estimate."""
