class SubRiemannError(Exception):
    """Base class for every error raised by this package."""


class InvariantViolation(SubRiemannError, ValueError):
    """Input does not satisfy a group-element invariant (unit norm, rotation)."""

    def __init__(self, invariant: str, residual: float, detail: str = ""):
        self.invariant = invariant
        self.residual = residual
        message = f"Error: {invariant} violation (residual={residual:.3e})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class DomainViolation(SubRiemannError, ValueError):
    pass


class TargetOutOfRange(SubRiemannError, ValueError):
    pass


class NoMatchError(SubRiemannError, RuntimeError):
    pass


class UsageError(SubRiemannError, ValueError):
    pass
