"""Exception types shared across the toolkit."""


class ResolventLabError(Exception):
    """Base class for toolkit-specific failures."""


class SingularMatrixError(ResolventLabError):
    """A linear solve hit a pivot below the singularity guard."""


class ConvergenceError(ResolventLabError):
    """An iterative kernel failed to converge within its iteration cap."""


class DegenerateParametersError(ResolventLabError, ValueError):
    """Operation requires distinct stiffness constants (a != b)."""


class InternalInconsistencyError(ResolventLabError, RuntimeError):
    """A state that the theory rules out was observed; indicates a bug."""


class ConfigError(ResolventLabError):
    """A job configuration failed validation."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"at {location}: {message}"
        super().__init__(message)
