"""Exception hierarchy shared by the engine, baselines and harness."""


class AppNextError(Exception):
    """Base class for every error raised by this package."""


class InvalidSizeError(AppNextError, ValueError):
    """A probability vector was asked to take an impossible length."""


class ConfigError(AppNextError, ValueError):
    pass


class InputError(AppNextError, ValueError):
    pass


class UnknownAppError(AppNextError, KeyError):
    pass


class OrderingError(AppNextError, ValueError):
    """A launch event arrived with a timestamp older than its predecessor."""


class CorruptStateError(AppNextError, ValueError):
    """A snapshot blob could not be decoded.

    ``position`` holds the byte offset (or ``None``) where decoding failed.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at byte {position})"
        super().__init__(message)
        self.position = position


class EmptyInputError(AppNextError, ValueError):
    pass


class SchemaError(AppNextError, ValueError):
    """An input file is missing a required column or key."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ParseError(SchemaError):
    """A field was present but could not be parsed."""


class SpecError(AppNextError, ValueError):
    pass
