"""Exception hierarchy. Every error carries the CLI exit code of its category."""


class RevivalError(Exception):
    exit_code = 1


class ConfigError(RevivalError):
    exit_code = 2


class NumericError(RevivalError, ValueError):
    exit_code = 3


class OutputError(RevivalError):
    exit_code = 4


class InvalidRangeError(NumericError):
    pass


class LengthMismatchError(NumericError):
    pass


class TooFewPointsError(NumericError):
    pass


class WrongSpaceError(NumericError):
    pass


class DomainError(NumericError):
    pass


class LevelOutOfRangeError(NumericError):
    pass


class GridTooNarrowError(NumericError):
    pass


class InsufficientCaptureError(NumericError):
    pass


class PacketTooWideError(NumericError):
    pass


class UnsupportedPacketError(NumericError):
    pass


class NotNormalizedError(NumericError):
    pass


class MisalignedSeriesError(NumericError):
    pass
