from typing import Optional


EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class SaltTrackError(Exception):
    exit_code = EXIT_DATA


class DataError(SaltTrackError):
    exit_code = EXIT_DATA


class FormatError(DataError):
    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        super(FormatError, self).__init__(message)
        self.path = path
        self.line = line


class GeometryError(DataError):
    pass


class NumericalError(SaltTrackError):
    exit_code = EXIT_NUMERICAL


class TrackingUnstableError(NumericalError):
    def __init__(self, removed: int, total: int):
        super(TrackingUnstableError, self).__init__(
            f"tracking unstable: {removed} of {total} tracked points rejected")
        self.removed = removed
        self.total = total


class DimensionError(ValueError):
    exit_code = EXIT_NUMERICAL
