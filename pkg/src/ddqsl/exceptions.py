"""Exception types raised by ddqsl."""


class ValidationError(ValueError):
    """Invalid physical parameters, states or configuration."""


class DomainError(ValueError):
    """Evaluation time outside the driving window [0, tau]."""


class AmbiguousDerivativeError(ValueError):
    """Derivative requested exactly at a pulse time without choosing a side."""


class CapacityError(ValueError):
    """Dense computation requested beyond the memory guard."""


class DegenerateTargetError(ArithmeticError):
    """The final state coincides with the initial one, so the QSLT is 0/0."""
