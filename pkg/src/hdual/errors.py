"""Exception hierarchy shared by all hdual modules."""


class HdualError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatchError(HdualError, TypeError):
    pass


class RingMismatchError(HdualError, TypeError):
    pass


class ParseError(HdualError, ValueError):
    """Raised on malformed polynomial or field text.

    ``line`` and ``column`` are 1-based positions into the offending text.
    """

    def __init__(self, message, text="", line=1, column=1):
        self.message = message
        self.text = text
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class LevelOverflowError(HdualError, ValueError):
    pass


class DegreeOverflowError(HdualError, OverflowError):
    pass


class UndefinedDegreeError(HdualError, ValueError):
    pass


class NotOnVarietyError(HdualError, ValueError):
    pass


class SingularMatrixError(HdualError, ValueError):
    pass


class ConfigurationError(HdualError, ValueError):
    pass


class NoSuggestionError(HdualError, ValueError):
    pass


class BudgetExceededError(HdualError, RuntimeError):
    """Raised when a Groebner computation runs past its pair budget.

    ``partial`` holds whatever was computed before the budget ran out
    (a list of polynomials or a partial report).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
