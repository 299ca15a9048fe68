"""Axis-aligned hypercubes with the half-open membership convention."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from civd import TOLERANCE
from civd.geometry.point import Point, PointArray, as_points
from civd.utils.exceptions import DegenerateBoxError, DimensionMismatchError


class Segment(NamedTuple):
    start: Point
    end: Point


@dataclass(frozen=True, eq=False)
class AxisBox:
    """Hypercube given by its center and edge length.

    Membership is half-open: closed on the low side of each axis, open on the high side.
    """

    center: Point
    edge_length: float

    def __post_init__(self) -> None:
        center = np.array(self.center, dtype=float)
        if center.ndim != 1 or center.size == 0:
            msg = f"Box center must be a non-empty coordinate list, got shape {center.shape}"
            raise DimensionMismatchError(msg)
        edge = float(self.edge_length)
        if not (math.isfinite(edge) and edge >= 0) or not np.all(np.isfinite(center)):
            msg = f"Invalid box: center {center.tolist()}, edge {edge}"
            raise ValueError(msg)
        center.setflags(write=False)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "edge_length", edge)

    @classmethod
    def enclosing(cls, lo: Point, hi: Point) -> AxisBox:
        """Smallest hypercube containing the rectangle [lo, hi]."""
        return cls((lo + hi) / 2, float(np.max(hi - lo)))

    @property
    def dim(self) -> int:
        return self.center.size

    @cached_property
    def lo(self) -> Point:
        return self.center - self.edge_length / 2

    @cached_property
    def hi(self) -> Point:
        return self.center + self.edge_length / 2

    @property
    def diameter(self) -> float:
        return math.sqrt(self.dim) * self.edge_length

    @property
    def volume(self) -> float:
        return self.edge_length**self.dim

    def _check_dim(self, point: Point) -> None:
        if point.shape[-1] != self.dim:
            msg = f"Dimension mismatch: box is {self.dim}-D, point is {point.shape[-1]}-D"
            raise DimensionMismatchError(msg)

    def contains(self, point: Point) -> bool:
        """Half-open membership test."""
        point = np.asarray(point, dtype=float)
        self._check_dim(point)
        return bool(np.all(point >= self.lo) and np.all(point < self.hi))

    def contains_closed(self, point: Point, tol: float = TOLERANCE) -> bool:
        point = np.asarray(point, dtype=float)
        self._check_dim(point)
        return bool(np.all(point >= self.lo - tol) and np.all(point <= self.hi + tol))

    def contains_box(self, other: AxisBox, tol: float = TOLERANCE) -> bool:
        return bool(np.all(other.lo >= self.lo - tol) and np.all(other.hi <= self.hi + tol))

    def intersects(self, other: AxisBox, tol: float = 0.0) -> bool:
        """Closed intersection test."""
        return bool(np.all(self.lo <= other.hi + tol) and np.all(other.lo <= self.hi + tol))

    def orthant_of(self, point: Point) -> int:
        """Label (1..2^d) of the child of split_box containing point."""
        bits = np.asarray(point) >= self.center
        return 1 + int(np.dot(bits, 1 << np.arange(self.dim)))

    def corners(self) -> PointArray:
        return np.array(list(itertools.product(*zip(self.lo, self.hi, strict=True))))

    def edges(self) -> list[Segment]:
        """All d·2^(d-1) edges of the hypercube (the box itself when d = 1)."""
        segments = []
        for axis in range(self.dim):
            others = [j for j in range(self.dim) if j != axis]
            for choice in itertools.product((0, 1), repeat=len(others)):
                start = self.lo.copy()
                for j, side in zip(others, choice, strict=True):
                    start[j] = self.hi[j] if side else self.lo[j]
                end = start.copy()
                end[axis] = self.hi[axis]
                segments.append(Segment(start, end))
        return segments

    def __repr__(self) -> str:
        return f"AxisBox(center={self.center.tolist()}, edge_length={self.edge_length})"


def dist_point_box(point: Point, box: AxisBox) -> float:
    """Euclidean distance from point to the closed box (0 inside)."""
    point = np.asarray(point, dtype=float)
    box._check_dim(point)
    gap = np.maximum(0.0, np.maximum(box.lo - point, point - box.hi))
    return float(np.linalg.norm(gap))


def split_box(box: AxisBox) -> list[AxisBox]:
    """The 2^d half-size children of box; entry k has orthant label k + 1."""
    if box.edge_length <= 0:
        msg = f"Cannot split a zero-size box at {box.center.tolist()}"
        raise DegenerateBoxError(msg)
    quarter = box.edge_length / 4
    children = []
    for label in range(1 << box.dim):
        signs = np.array([1.0 if label >> j & 1 else -1.0 for j in range(box.dim)])
        children.append(AxisBox(box.center + signs * quarter, box.edge_length / 2))
    return children


def smallest_enclosing_box(points: PointArray) -> AxisBox:
    """Minimal hypercube containing every point; centered at the per-axis midrange."""
    points = as_points(points)
    return AxisBox.enclosing(points.min(axis=0), points.max(axis=0))
