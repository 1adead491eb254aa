"""Exception taxonomy shared by all modules.

Grouping matters for the CLI exit codes: subclasses of ``UsageError`` map
to exit code 2, ``NumericError`` to 3 and ``IoError`` to 4.
"""


class LmgOttoError(Exception):
    """Base class for every error raised by this package."""


class UsageError(LmgOttoError):
    """Invalid user input: bad parameters, flags or requested analyses."""


class NumericError(LmgOttoError):
    """A numerical routine could not produce a trustworthy result."""


class InvalidSector(UsageError):
    """Spin sector with fewer than two levels (twice_s < 1)."""


class InvalidTemperature(UsageError):
    """Non-positive bath temperature."""


class InvalidSqueezing(UsageError):
    """Negative squeezing parameter."""


class DimensionError(UsageError):
    """Mismatched lengths between populations, spectra or tables."""


class ParameterMismatch(UsageError):
    """Two runs fed to an isolation protocol differ in shared parameters."""


class ClassicallyForbidden(UsageError):
    """Band circles do not intersect; semiclassical geometry undefined."""


class InsufficientData(UsageError):
    """Too few sweep rows for the requested analysis."""


class NoEngineOperation(UsageError):
    """No sweep row produced positive work; no efficiency extremum."""


class EmptySeries(UsageError):
    """Chart emitter received no series or an empty series."""


class UnknownFlag(UsageError):
    """Unrecognised command-line flag or config-file key."""


class MalformedValue(UsageError):
    """A flag or config value that does not parse to its expected type."""


class ConflictingModes(UsageError):
    """Contradictory scaling-mode selections in one invocation."""


class EigensolverFailure(NumericError):
    """Eigendecomposition did not converge or failed verification."""


class NonFiniteValue(NumericError):
    """NaN or infinity where a finite number is required."""


class IoError(LmgOttoError):
    """File emission failed; carries the offending path."""

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = str(path)
        self.reason = reason
