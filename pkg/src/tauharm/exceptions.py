"""Exception and warning types shared across the package."""


class TauharmError(Exception):
    """Base class for all tauharm errors."""


class StructureError(TauharmError, ValueError):
    """Objects from incompatible groups, wrong dimensions, or unknown labels."""


class InvalidAutomorphism(TauharmError, ValueError):
    """Integer matrix that is not a well-defined bijection of the group."""


class SideMismatchError(TauharmError, ValueError):
    """A primal-side function was passed where a dual-side one is required
    (or vice versa)."""


class DomainError(TauharmError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class SpecFormatError(TauharmError, ValueError):
    """Malformed group-spec or function file."""


class TruncationWarning(UserWarning):
    """Sampled function does not decay at the grid boundary; quadrature
    residuals will degrade."""
