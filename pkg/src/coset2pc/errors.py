"""Exception hierarchy shared across the package."""


class Coset2pcError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(Coset2pcError, ValueError):
    pass


class FieldDivisionByZero(Coset2pcError, ZeroDivisionError):
    pass


class DimensionMismatchError(Coset2pcError, ValueError):
    pass


class NoSolutionError(Coset2pcError, ValueError):
    """Raised when a linear system M z = b is inconsistent."""


class EnumerationCapError(Coset2pcError, ValueError):
    """Raised when a brute-force routine would exceed its enumeration cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} exceeds enumeration cap {cap}")
        self.size = size
        self.cap = cap


class NotACodewordError(Coset2pcError, ValueError):
    pass


class RankDeficientError(Coset2pcError, ValueError):
    pass


class CodeFormatError(Coset2pcError, ValueError):
    """Parse error in a code file; carries 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


class NotMinimalError(Coset2pcError):
    """Security refusal: the agreed code is not certified minimal."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ProtocolError(Coset2pcError):
    """Malformed frame or unexpected message for the current state."""


class ProtocolAbort(ProtocolError):
    """The peer (or we) aborted the session with an ABORT frame."""


class TransportError(Coset2pcError):
    pass
