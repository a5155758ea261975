"""Exception types raised across the package."""


class InputError(ValueError):
    """Malformed vector input: wrong length, non-finite entries, mismatched spaces."""


class DomainError(ValueError):
    """A point lies outside the domain ball of an operator."""


class RegimeError(ValueError):
    """A check needs 1 < p <= 2 but the space is outside that range."""


class SolverError(RuntimeError):
    """The resolvent solver did not reach its residual target.

    ``best_residual`` holds the smallest dual-norm residual seen.
    """

    def __init__(self, message, best_residual=float("nan"), iterations=0):
        super().__init__(message)
        self.best_residual = best_residual
        self.iterations = iterations


class ConfigError(ValueError):
    """Invalid run configuration, attributed to a line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
