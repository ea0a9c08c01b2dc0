"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed polynomial text, or text violating the declared n / d."""


class ResourceGuardExceeded(RuntimeError):
    """A Groebner basis computation hit its pair, degree or time budget."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed. Always a bug."""
