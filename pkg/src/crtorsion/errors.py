"""Exception types shared across the package."""


class PoleError(ArithmeticError):
    """Evaluation requested at (or numerically on top of) a pole."""

    def __init__(self, message, location=None, residue=None):
        super().__init__(message)
        self.location = location
        self.residue = residue


class DomainError(ValueError):
    """Argument outside the domain of the function."""


class ValidationError(ValueError):
    """Seifert/holonomy data failed validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class TruncationError(RuntimeError):
    """Requested tolerance cannot be met within the term budget."""


class IllConditionedError(ArithmeticError):
    """Numerical rank decision is too close to the threshold to trust."""


class ConfigurationError(ValueError):
    """Bad grid, tolerance, or evaluation point passed to a check."""
