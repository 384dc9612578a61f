"""Exception types shared across the toolkit."""


class NclpError(Exception):
    """Base class for all toolkit errors."""


class ShapeError(NclpError):
    """Operands live on different algebras or have nonconforming blocks."""


class DomainError(NclpError):
    """An input violates an operation's precondition (non-PSD, alpha=1, ...)."""


class ConditioningError(NclpError):
    """A solve exceeded its residual budget; carries the measured residual."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class FileFormatError(NclpError):
    """A matrix file failed structural or semantic validation."""


class UsageError(NclpError):
    """Bad command-line arguments or an unknown suite name."""
