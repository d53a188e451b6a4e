"""Exception types shared across the package."""


class InvalidSpecification(ValueError):
    """A group description that does not name a finite abelian group."""


class InvalidOperand(ValueError):
    pass


class InvalidIndex(IndexError):
    pass


class InvalidParameter(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ValueError):
    pass


class NoQuadruples(LookupError):
    pass


class BudgetExceeded(RuntimeError):
    """Subset search ran out of node expansions before finishing.

    ``best`` holds the largest edge count seen so far, ``witness`` its subset.
    """

    def __init__(self, message, best=None, witness=None):
        super().__init__(message)
        self.best = best
        self.witness = witness


class ConfigurationNotFound(Exception):
    """The layered search stopped before producing a configuration.

    ``reason`` is one of ``no-quadruples``, ``bucket-too-small``,
    ``restricted-too-sparse``, ``base-quadruple-missing``.
    """

    REASONS = ("no-quadruples", "bucket-too-small", "restricted-too-sparse", "base-quadruple-missing")

    def __init__(self, reason, level, detail=""):
        assert reason in self.REASONS, reason
        self.reason = reason
        self.level = level
        self.detail = detail
        msg = f"{reason} at level {level}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
