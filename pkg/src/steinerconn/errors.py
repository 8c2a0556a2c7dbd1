"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid input: bad vertex ids, malformed specs, out-of-range parameters."""


class NotCoveredError(InputError):
    """Parameters fall outside the range a closed formula is stated for."""


class BudgetExceededError(RuntimeError):
    """Search node budget exhausted; the answer is unknown, never wrong."""

    def __init__(self, message, used=None, limit=None):
        super().__init__(message)
        self.used = used
        self.limit = limit


class ConstructionError(RuntimeError):
    """A certificate builder produced something that failed its self-check.

    Signals a transcription bug or an unhandled degenerate configuration,
    never an invalid emitted certificate.
    """
