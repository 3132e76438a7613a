"""Exception hierarchy shared by every curvlab module."""


class CurvlabError(Exception):
    """Base class for all errors raised by curvlab."""


class ExpressionSyntaxError(CurvlabError):
    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownIdentifierError(CurvlabError):
    pass


class NonIntegerExponentError(ExpressionSyntaxError):
    pass


class ChartError(CurvlabError):
    """Raised for malformed charts or when operands live on different charts."""


class PoleError(CurvlabError, ZeroDivisionError):
    """A denominator vanished: either division by zero or evaluation at a pole."""

    def __init__(self, message, denominator=None):
        self.denominator = denominator
        super().__init__(message)


class SingularMetricError(CurvlabError):
    pass


class ValenceError(CurvlabError):
    pass


class SymmetryError(CurvlabError):
    pass


class PatternError(CurvlabError):
    pass


class NullFormError(CurvlabError):
    """J(X_J) vanishes identically, so the curvature cannot be reconstructed."""


class FormatError(CurvlabError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
