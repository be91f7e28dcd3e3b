class InvariantViolation(RuntimeError):
    """A property that is guaranteed mathematically failed to hold at runtime.

    Raised instead of a normal input-validation error so callers (and the CLI,
    which maps it to a distinct exit code) can tell a broken internal
    guarantee apart from bad input.
    """
