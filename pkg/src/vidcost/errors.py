"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid configuration value or unknown configuration key."""


class TraceParseError(ValueError):
    """A trace file row could not be parsed. Carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class TraceStructureError(ValueError):
    """Trace rows parse individually but do not cover hours 1..H exactly once."""
