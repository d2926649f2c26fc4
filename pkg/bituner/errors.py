"""
Error types raised by the library.

Everything derives from ValueError so callers that only guard against bad input keep working.
The CLI layer is the only place these get turned into user-facing diagnostics.
"""


class BITuneError(ValueError):
    """Root of all library errors."""


class GraphParseError(BITuneError):
    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class GraphError(BITuneError):
    pass


class ThresholdError(BITuneError):
    pass


class CoverageError(BITuneError):
    pass


class GridError(BITuneError):
    pass


class SamplingError(BITuneError):
    pass


class OracleError(BITuneError):
    pass


class ForestError(BITuneError):
    pass


class ConfigError(BITuneError):
    def __init__(self, message: str, key: str | None = None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)
