"""Point and point-set coercion helpers."""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from civd.utils.exceptions import DimensionMismatchError, DuplicatePointsError, EmptyInputError, InvalidPointError

Point = npt.NDArray[np.float64]
PointArray = npt.NDArray[np.float64]


def as_point(coords: Sequence[float] | Point, dim: int | None = None) -> Point:
    """Return coords as a read-only 1-D float array, checking dimension and finiteness."""
    point = np.array(coords, dtype=float)
    if point.ndim != 1 or point.size == 0:
        msg = f"A point must be a non-empty 1-D coordinate list, got shape {point.shape}"
        raise DimensionMismatchError(msg)
    if dim is not None and point.size != dim:
        msg = f"Expected a point of dimension {dim}, got {point.size}"
        raise DimensionMismatchError(msg)
    if not np.all(np.isfinite(point)):
        msg = f"Point coordinates must be finite, got {point.tolist()}"
        raise InvalidPointError(msg)
    point.setflags(write=False)
    return point


def as_points(points: Sequence[Sequence[float]] | PointArray, dim: int | None = None) -> PointArray:
    """Return an (n, d) read-only float array of points."""
    array = np.array(points, dtype=float)
    if array.size == 0:
        raise EmptyInputError("The point set is empty")
    if array.ndim == 1:
        # A flat list is a 1-D point set
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        msg = f"Points must be a 2-D array (n, d), got shape {array.shape}"
        raise DimensionMismatchError(msg)
    if dim is not None and array.shape[1] != dim:
        msg = f"Expected points of dimension {dim}, got {array.shape[1]}"
        raise DimensionMismatchError(msg)
    if not np.all(np.isfinite(array)):
        raise InvalidPointError("Point coordinates must be finite")
    array.setflags(write=False)
    return array


def find_duplicates(points: PointArray) -> list[tuple[int, int]]:
    """Return (first, duplicate) index pairs of coincident points."""
    _, first_index, inverse = np.unique(points, axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    return [
        (int(first_index[group]), index)
        for index, group in enumerate(inverse)
        if first_index[group] != index
    ]


def ensure_distinct(points: PointArray) -> None:
    """Raise DuplicatePointsError listing the offending indices, if any."""
    duplicates = find_duplicates(points)
    if duplicates:
        msg = f"Duplicate input points at indices {duplicates}"
        raise DuplicatePointsError(msg, duplicates)
