"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class LightlikeFluxError(DomainError):
    """Flux 4-vector is lightlike or spacelike where a timelike one is required."""


class SingularDenominatorError(DomainError):
    """A formula's denominator is too close to zero; the message names the factor."""


class SubThresholdError(DomainError):
    """Rotator energy below the two-particle rest mass threshold."""


class InsufficientJetError(DomainError):
    """A trajectory jet is missing derivative orders an operation needs."""


class NumericConsistencyError(ArithmeticError):
    """A quantity that must be real (or a multiple of the projector) is not."""


class StepSizeError(RuntimeError):
    """Integrator constraint drift before projection exceeded its bound."""


class StabilityError(RuntimeError):
    """Integrator step size too large for the motion's angular frequency."""
