"""Exception types shared across the package."""


class GenformError(Exception):
    """Base class for every error raised by this package."""


class ChartMismatchError(GenformError):
    """Operands were built over different charts, or exponent data does not
    match the chart dimension."""


class DegreeError(GenformError):
    """A form, pair or operation received an argument of an unusable degree."""


class UnknownIdentityError(GenformError):
    """The identity runner was asked for an identity it does not know."""


class ParseError(GenformError):
    """A lexical, syntactic or semantic error in session text.

    Carries a source position and a stable diagnostic code so front ends can
    render ``line:col: code: message`` diagnostics.
    """

    def __init__(self, line: int, col: int, code: str, message: str):
        super().__init__(f"{line}:{col}: {code}: {message}")
        self.line = line
        self.col = col
        self.code = code
        self.message = message
