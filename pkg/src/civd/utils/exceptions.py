"""Exceptions used in the civd module."""


class CivdError(Exception):
    """Generic CivdError."""


class InvalidConfigurationError(CivdError):
    """The configuration provided is not valid, e.g. epsilon out of range or unknown model."""


class DimensionMismatchError(CivdError):
    """Points, boxes or queries of different dimensions were combined."""


class DegenerateBoxError(CivdError):
    """A zero-size box was used where a positive edge length is required."""


class EmptyInputError(CivdError):
    """An operation received an empty point list."""


class DuplicatePointsError(CivdError):
    """The input point set contains coincident points."""

    def __init__(self, msg: str, duplicates: list[tuple[int, int]] | None = None) -> None:
        super().__init__(msg)
        self.duplicates = duplicates or []


class SingularQueryError(CivdError):
    """The query point coincides (within tolerance) with an input point or site."""


class NoSolutionError(CivdError):
    """The error budget epsilon is too large for the error calculus to invert."""


class TooLargeError(CivdError):
    """The brute-force oracle was asked for an instance above its cap."""


class MissingObserverError(CivdError):
    """A density cluster was requested from a decomposition built without density tracking."""


class UnsupportedDimensionError(CivdError):
    """The requested operation is not available in this dimension."""


class DegenerateSpanError(CivdError):
    """A set of direction vectors does not span the expected subspace."""


class EmptyCoverError(CivdError):
    """The effective cover of a query box is empty."""


class InputFileError(CivdError):
    """A point file or artifact could not be read."""


class InvalidPointError(CivdError, ValueError):
    """A point has non-finite or unparsable coordinates."""
