"""Exception hierarchy shared by every unimat module."""


class UnimatError(Exception):
    """Base class for all library errors."""


class ParseError(UnimatError, ValueError):
    pass


class MalformedHeader(ParseError):
    pass


class RowLengthMismatch(ParseError):
    pass


class NonIntegerToken(ParseError):
    pass


class EmptyInput(UnimatError, ValueError):
    pass


class NotSquare(UnimatError, ValueError):
    pass


class NotPrime(UnimatError, ValueError):
    pass


class SingularMatrix(UnimatError, ArithmeticError):
    pass


class RankDeficient(UnimatError, ArithmeticError):
    pass


class NotCoprime(UnimatError, ValueError):
    pass


class ColumnMismatch(UnimatError, ValueError):
    pass


class BadShape(UnimatError, ValueError):
    pass


class TooLarge(UnimatError, ValueError):
    pass


class InvalidParams(UnimatError, ValueError):
    pass


class NotPrimitive(UnimatError, ValueError):
    pass


class RestartLimitExceeded(UnimatError, RuntimeError):
    """A randomized routine hit its restart cap without succeeding."""

    def __init__(self, message: str, restarts: int = 0):
        super().__init__(message)
        self.restarts = restarts
