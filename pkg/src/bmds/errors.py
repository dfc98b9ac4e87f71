class BmdsError(Exception):
    """Base class for every error raised by bmds."""


class ParameterError(BmdsError, ValueError):
    """Code parameters violate a construction's constraints."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DimensionError(BmdsError, ValueError):
    pass


class DomainError(BmdsError, ValueError):
    """A ring element is outside the ideal an operation requires."""


class NotInvertibleError(BmdsError, ArithmeticError):
    pass


class UnrecoverableError(BmdsError):
    """Too many columns are missing to decode."""


class NotMDSError(BmdsError):
    """An erasure pattern leads to a singular system."""

    def __init__(self, message, erased=None):
        self.erased = erased
        super().__init__(message)


class RepairError(BmdsError):
    pass


class FormatError(BmdsError, ValueError):
    """A column file or manifest is malformed or inconsistent."""
