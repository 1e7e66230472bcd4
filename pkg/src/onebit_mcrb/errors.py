"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the declared domain of its model."""


class DegenerateNoiseError(ValueError):
    """Noise model has zero or negative variance where positive is required."""


class UndersamplingError(ValueError):
    """Band-limited noise sampled below twice its bandwidth."""


class DegenerateSignalError(ValueError):
    """Signal or data is identically zero where a direction must be inferred."""


class NumericalError(ArithmeticError):
    """A numerical consistency check failed (singular matrix, negative bound, ...)."""


class ScenarioError(ValueError):
    """A scenario configuration failed validation."""
