"""Exception hierarchy shared by all gapscale modules."""


class GapscaleError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GapscaleError, ValueError):
    """Argument outside the domain where a quantity is defined."""


class InvalidIntervalError(DomainError):
    pass


class EvaluationError(GapscaleError, ArithmeticError):
    """An integrand or kernel produced a non-finite value."""


class NonConvergenceError(GapscaleError, RuntimeError):
    pass


class PrecisionLossError(GapscaleError, ArithmeticError):
    """Double precision can no longer resolve the requested determinant."""


class PivotFailure(GapscaleError, ArithmeticError):
    def __init__(self, message: str, smallest_pivot: float):
        super().__init__(message)
        self.smallest_pivot = smallest_pivot


class RecursionBreakdown(GapscaleError, ArithmeticError):
    def __init__(self, message: str, index: int, value: complex):
        super().__init__(message)
        self.index = index
        self.value = value


class SingularSystemError(GapscaleError, ArithmeticError):
    pass


class BranchError(GapscaleError, ValueError):
    """A multivalued function was evaluated on its branch cut."""


class BracketFailure(GapscaleError, RuntimeError):
    def __init__(self, message: str, lower_value: float, upper_value: float):
        super().__init__(message)
        self.lower_value = lower_value
        self.upper_value = upper_value


class ConfigError(GapscaleError, ValueError):
    pass


class RegimeWarning(UserWarning):
    """Inputs lie outside the window where an asymptotic formula is expected to be accurate."""
