"""Exception hierarchy shared by every module."""


class DomainError(ValueError):
    """Argument outside the domain where the quantity is defined."""


class NotAProbabilityMeasure(DomainError):
    """The requested measure exists only as a signed measure."""


class UnsupportedError(DomainError):
    """Requested path is deliberately not offered (e.g. radicals for n >= 5)."""


class NumericalError(ArithmeticError):
    """Non-finite values or loss of accuracy during a computation."""


class ConvergenceError(NumericalError):
    """An iterative or truncated procedure failed to reach its tolerance."""


class BranchError(NumericalError):
    """Root or branch selection is ambiguous."""
