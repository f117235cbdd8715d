"""Exception hierarchy. Each class maps onto one CLI exit code."""


class MatchForestError(Exception):
    exit_code = 1


class UsageError(MatchForestError, ValueError):
    """Malformed input: invalid element ids, wrong element kinds, bad files."""

    exit_code = 2


class GraphValidationError(UsageError):
    """A graph violates a construction invariant (loops, bad vertex ids, size cap)."""


class DomainError(MatchForestError):
    """Input is well-formed but violates a mathematical precondition."""

    exit_code = 3


class InfeasibleExchange(DomainError):
    """Root exchange impossible; ``component`` is a source component missing a target."""

    def __init__(self, message, component=frozenset()):
        super().__init__(message)
        self.component = frozenset(component)


class BudgetExceeded(MatchForestError):
    exit_code = 4
