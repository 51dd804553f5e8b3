class ValidationError(ValueError):
    """Raised when a model input violates a documented invariant."""


class ConfigError(ValidationError):
    """Raised for config files that do not parse or do not match the command schema."""


class NumericalError(ArithmeticError):
    """Raised when a computation produces non-finite values."""


class OutputError(OSError):
    """Raised when results cannot be written. The message carries the offending path."""
