"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class NoSolutionError(RuntimeError):
    """A recovery problem has no solution inside the search interval."""

    def __init__(self, message: str, achieved_range: tuple[float, float] | None = None):
        super().__init__(message)
        self.achieved_range = achieved_range


class NumericError(RuntimeError):
    """A numerical procedure failed to reach its accuracy target."""

    def __init__(self, message: str, achieved_tolerance: float | None = None):
        super().__init__(message)
        self.achieved_tolerance = achieved_tolerance


class ClosureNotFoundError(NumericError):
    """No periodic closure was detected within the step budget."""

    def __init__(self, message: str, best_residual: float, best_step: int):
        super().__init__(message)
        self.best_residual = best_residual
        self.best_step = best_step
