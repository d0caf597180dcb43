"""Exception hierarchy for the tessarine library."""


class TessarineError(Exception):
    """Base class for all library errors."""


class ValidationError(TessarineError, ValueError):
    """Invalid parameters or malformed input."""


class DomainError(TessarineError, ValueError):
    """Operation is undefined for the given input."""


class ZeroDivisorError(TessarineError, ZeroDivisionError):
    """A channel of a scalar vanished, so it has no inverse."""

    def __init__(self, message, channel=None):
        super().__init__(message)
        self.channel = channel


class SingularMatrixError(TessarineError, ArithmeticError):
    """A channel matrix is singular."""

    def __init__(self, message, channel=None):
        super().__init__(message)
        self.channel = channel


class NoSquareRootError(TessarineError, ArithmeticError):
    def __init__(self, message, channel=None):
        super().__init__(message)
        self.channel = channel


class DefectiveChannelError(TessarineError, ArithmeticError):
    def __init__(self, message, channel=None):
        super().__init__(message)
        self.channel = channel


class NotHermitianError(DomainError):
    pass


class NotPositiveDefiniteError(DomainError):
    pass


class NotToeplitzError(DomainError):
    pass


class ParseError(TessarineError, ValueError):
    pass
