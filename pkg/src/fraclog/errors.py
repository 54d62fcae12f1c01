"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the documented domain of an operation."""


class BracketError(ValueError):
    """Root bracket invalid: no sign change, or empty interval."""


class NonConvergedError(RuntimeError):
    """Quadrature or iteration failed to reach the requested tolerance.

    Carries the best available estimate so callers can inspect it.
    """

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class DivergentIntegralError(ValueError):
    """Integral diverges for the given parameters (head or tail blow-up)."""
