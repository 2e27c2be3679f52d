"""Exception hierarchy shared across the package."""


class ParamGridError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstanceError(ParamGridError):
    """Problem data violates a structural requirement (schema, signs, shapes)."""


class DegenerateInstanceError(InvalidInstanceError):
    """Every objective component of every solution is zero; bounds are undefined."""


class DomainError(ParamGridError):
    """A parameter vector or weight lies outside its admissible domain."""


class EpsilonRangeError(ParamGridError):
    """The accuracy parameter is outside (0, 1)."""


class GridCapError(ParamGridError):
    """The requested grid exceeds the configured enumeration cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"grid has {size} points, exceeding the cap of {cap}")
        self.size = size
        self.cap = cap


class SnapRangeError(ParamGridError):
    """A snapped exponent fell outside [lb, ub]; indicates an upstream bug."""


class TooLargeError(ParamGridError):
    """An exhaustive enumeration was requested on an instance above its size guard."""


class OracleError(ParamGridError):
    """The solver failed at a specific parameter vector during a grid run."""

    def __init__(self, lam, cause):
        super().__init__(f"oracle failed at lambda={lam}: {cause}")
        self.lam = lam
        self.cause = cause


class VerificationFailure(ParamGridError):
    """Raised by the CLI layer when a verification run does not pass."""
