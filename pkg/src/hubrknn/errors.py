"""Exception types shared across the package.

All three derive from ValueError so callers can catch input problems with a
single except clause; the CLI maps them to the "data error" exit code.
"""


class ParseError(ValueError):
    """Malformed text input (edge lists, object files)."""


class FormatError(ValueError):
    """Bad binary data: wrong magic, truncation, or internal inconsistency."""


class ConfigError(ValueError):
    """Invalid parameter combination, e.g. k too large for the object set."""
