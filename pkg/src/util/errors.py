from typing import Any


class QlmError(Exception):
    """Base class for every failure raised by the solver suite."""


class DomainError(QlmError, ValueError):
    """Argument outside the domain of an operation (log of a negative, r outside the problem domain, ...)."""


class RangeError(QlmError, ValueError):
    """Argument outside the supported range of a special-function evaluator."""


class ConfigError(QlmError):
    """Configuration file or command-line option could not be validated."""


class NoBoundStateError(QlmError):
    """k² does not change sign on the domain at the requested energy."""


class StateNotFoundError(QlmError):
    """No energy bracket for the requested state was found in a scan."""


class IntegrandDomainError(QlmError):
    """Action integrand has the wrong sign inside the integration interval."""


class MatchError(QlmError):
    """The two Langer branches do not cross inside the classically allowed well."""


class RefinementError(QlmError):
    """Step size underflow while integrating a stiff segment."""

    def __init__(self, message: str, location: float | None = None) -> None:
        super().__init__(message)
        self.location = location


class BracketResetError(QlmError):
    """Node count of an updated phase does not match the target state."""

    def __init__(self, message: str, nodes: int, expected: int) -> None:
        super().__init__(message)
        self.nodes = nodes
        self.expected = expected


class ConvergenceError(QlmError):
    """Iteration cap reached; carries the residual history for reporting."""

    def __init__(self, message: str, history: list[Any] | None = None) -> None:
        super().__init__(message)
        self.history: list[Any] = history or []
