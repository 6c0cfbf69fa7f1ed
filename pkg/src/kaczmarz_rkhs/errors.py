"""Exception types raised across the package."""


class KaczmarzError(Exception):
    """Base class for all package errors."""


class OutsideDisc(KaczmarzError, ValueError):
    pass


class ZeroConstantTerm(KaczmarzError, ZeroDivisionError):
    pass


class InvalidMeasure(KaczmarzError, ValueError):
    pass


class RuleMismatch(KaczmarzError, ValueError):
    pass


class NumericalDegeneracy(KaczmarzError, ArithmeticError):
    pass


class SingularAnchorGram(KaczmarzError, ArithmeticError):
    pass


class EmptyAnchors(KaczmarzError, ValueError):
    pass


class InvalidEta(KaczmarzError, ValueError):
    pass


class UnsupportedSpec(KaczmarzError, TypeError):
    pass


class ZeroDensity(KaczmarzError, ValueError):
    pass


class ConfigError(KaczmarzError, ValueError):
    """Malformed configuration; ``field`` and ``line`` locate the problem when known."""

    def __init__(self, message, field=None, line=None):
        self.message = message
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
