"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class APrimesError(Exception):
    exit_code = 1


class DomainError(APrimesError, ValueError):
    """Input outside the mathematical domain of an operation."""

    exit_code = 2


class UsageError(APrimesError, ValueError):
    exit_code = 2


class RangeError(APrimesError, OverflowError):
    """Input exceeds the supported numeric range."""

    exit_code = 3


class PrecisionError(APrimesError, ArithmeticError):
    exit_code = 4


class ConfigurationError(APrimesError):
    """Checkpoint / run configuration mismatch."""

    exit_code = 5


class RunInterrupted(APrimesError):
    """A checkpointed run stopped before covering every segment."""

    exit_code = 6

    def __init__(self, completed, total):
        super().__init__(f"stopped after {completed}/{total} segments; resume from checkpoint")
        self.completed = completed
        self.total = total
