"""Exception hierarchy shared by all codecs, loaders and the CLI."""


class LelcError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(LelcError, ValueError):
    pass


class FramingError(LelcError, ValueError):
    """Input length does not fit the codec's framing."""


class DecodeError(LelcError, ValueError):
    """A coded stream contains something the codec cannot invert."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (offset {offset})"
        super().__init__(message)
        self.offset = offset


class IncompleteParseError(LelcError, ValueError):
    """Trailing dataword bits do not complete a path of the prefix table."""

    def __init__(self, message, residue):
        super().__init__(message)
        self.residue = residue


class CorruptStreamError(DecodeError):
    pass


class MalformedTraceError(LelcError, ValueError):
    def __init__(self, message, index=None):
        if index is not None:
            message = f"payload {index}: {message}"
        super().__init__(message)
        self.index = index


class FormatError(LelcError, ValueError):
    """A file does not follow its documented on-disk format."""


class TableViolation(LelcError, ValueError):
    """Raised when a prefix code table fails validation."""

    def __init__(self, report):
        super().__init__("; ".join(str(v) for v in report.violations))
        self.report = report
