"""Exception and warning types.

Errors split into two families so the CLI can map them onto exit codes:
``ConfigError`` (bad parameters, exit 2) and ``DataError`` (bad or
degenerate input data, exit 3).
"""


class GKSmoteError(Exception):
    pass


class ConfigError(GKSmoteError, ValueError):
    pass


class DataError(GKSmoteError, ValueError):
    pass


class ParseError(DataError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class SchemaError(DataError):
    pass


class EmptyClassError(DataError):
    pass


class TooSmallError(DataError):
    pass


class DimensionError(DataError):
    pass


class PoolTooSmallError(DataError):
    pass


class EmptyInputError(DataError):
    pass


class AllNoiseError(DataError):
    pass


class NoPositiveError(DataError):
    pass


class ShapeError(DataError):
    pass


class RateError(ConfigError):
    pass


class RangeError(ConfigError):
    pass


class UnsupportedAlphaError(ConfigError):
    pass


class SingleSampleWarning(UserWarning):
    """Only one minority sample survived filtering; clustering was skipped."""
