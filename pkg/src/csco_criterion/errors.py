"""Exception hierarchy shared by every module."""


class CscoError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CscoError, ValueError):
    """Malformed user input: scenario documents, expressions, parameters."""


class ParseError(InputError):
    """Syntax or validation error tied to a position in the source text."""

    def __init__(self, message, line=None, column=None, where=None):
        self.message = message
        self.line = line
        self.column = column
        self.where = where
        super().__init__(self._format())

    def _format(self):
        parts = []
        if self.where:
            parts.append(self.where)
        if self.line is not None:
            parts.append(f"line {self.line}, column {self.column}")
        prefix = ": ".join(parts)
        return f"{prefix}: {self.message}" if prefix else self.message

    def located(self, where):
        """Return a copy carrying an outer location (e.g. a JSON path)."""
        outer = f"{where}: {self.where}" if self.where else where
        return ParseError(self.message, self.line, self.column, outer)


class DimensionError(CscoError, ValueError):
    """Shape mismatch or dimension cap exceeded."""


class ContractError(CscoError, ValueError):
    """A documented precondition was violated (e.g. non-Hermitian input)."""


class NumericFailure(CscoError, ArithmeticError):
    """An iterative routine failed to converge or a residual check failed."""
