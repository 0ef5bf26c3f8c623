"""Exception types.

Malformed input (wrong table shapes, out-of-range indices, mismatched
signatures) raises; axiom failures never raise, they are reported as
violations by the validators.
"""


class XModLabError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(XModLabError):
    """Structurally broken input, as opposed to an axiom violation."""


class DimensionMismatch(MalformedInput):
    pass


class IndexOutOfRange(MalformedInput):
    pass


class SignatureMismatch(MalformedInput):
    pass


class BudgetExceeded(XModLabError):
    """An enumeration would exceed the configured candidate budget."""


class NotASection(XModLabError):
    pass


class NotKernel(XModLabError):
    pass


class NotComposable(XModLabError):
    pass


class InvalidMorphism(XModLabError):
    pass


class InvalidCrossedModule(XModLabError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidGroupoid(XModLabError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidHomotopy(XModLabError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidDerivation(XModLabError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class RoundTripFailure(XModLabError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotDeltaImage(XModLabError):
    pass


class EndpointMismatch(XModLabError):
    pass


class BaseMismatch(XModLabError):
    pass


class NotRegular(XModLabError):
    pass


class InternalInconsistency(XModLabError):
    """Two provably equivalent computations disagreed.

    Signals a bug or a genuine discrepancy in the underlying theory;
    never silently resolved.
    """


class UnknownName(XModLabError):
    pass


class ParseError(XModLabError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UsageError(XModLabError):
    pass
