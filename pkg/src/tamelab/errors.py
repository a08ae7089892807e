"""Exception hierarchy shared by all tamelab modules.

Each class carries the process exit code the command-line harness maps it
to, so library errors surface with stable, documented codes.
"""


class TameLabError(Exception):
    """Base class for all tamelab errors."""

    exit_code = 6


class ConfigError(TameLabError):
    """Malformed configuration, unknown source kind, or bad parameter string."""

    exit_code = 2


class CapacityError(TameLabError):
    """A window, pattern space, or search exceeds its hard size cap."""

    exit_code = 3


class DataIOError(TameLabError):
    """Reading or writing an artifact file failed."""

    exit_code = 4


class DimensionError(TameLabError):
    """Mismatched dimensions between points, rotation vectors, or index vectors."""

    exit_code = 5


class ShiftRangeError(TameLabError):
    """A requested shift places a coordinate set outside the materialized window."""

    exit_code = 5


class ArgumentError(TameLabError):
    """An argument violates a documented precondition."""

    exit_code = 5


class WitnessIntegrityError(TameLabError):
    """A certificate or witness fails re-verification against its data."""

    exit_code = 5
