"""Cell regions: boxes and box differences."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from civd.geometry.box import AxisBox, dist_point_box
from civd.geometry.point import Point
from civd.utils.exceptions import DegenerateBoxError


class RegionKind(Enum):
    BOX = "box"
    BOX_DIFFERENCE = "box_difference"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, eq=False)
class Region:
    kind: RegionKind
    outer: AxisBox
    inner: AxisBox | None = None

    def __post_init__(self) -> None:
        if self.kind is RegionKind.BOX and self.inner is not None:
            raise ValueError("A box region has no inner box")
        if self.kind is RegionKind.BOX_DIFFERENCE:
            if self.inner is None or not self.outer.contains_box(self.inner):
                raise ValueError("The inner box of a box difference must lie inside the outer box")
            if self.inner.edge_length >= self.outer.edge_length:
                msg = "Box difference is empty"
                raise DegenerateBoxError(msg)

    @classmethod
    def box(cls, box: AxisBox) -> Region:
        return cls(RegionKind.BOX, box)

    @classmethod
    def difference(cls, outer: AxisBox, inner: AxisBox) -> Region:
        return cls(RegionKind.BOX_DIFFERENCE, outer, inner)

    @property
    def dim(self) -> int:
        return self.outer.dim

    @property
    def volume(self) -> float:
        if self.inner is None:
            return self.outer.volume
        return self.outer.volume - self.inner.volume

    def contains(self, point: Point) -> bool:
        """Half-open membership, following the box convention for both boxes."""
        if not self.outer.contains(point):
            return False
        return self.inner is None or not self.inner.contains(point)

    def boundary_distance(self, point: Point) -> float:
        """Distance from a point of the region to its boundary."""
        point = np.asarray(point, dtype=float)
        gap = float(np.minimum(point - self.outer.lo, self.outer.hi - point).min())
        if self.inner is None:
            return gap
        return min(gap, dist_point_box(point, self.inner))

    def representative_point(self) -> Point:
        """Box center, or the center of the thickest axis slab of outer minus inner."""
        if self.inner is None:
            return self.outer.center
        low = self.inner.lo - self.outer.lo
        high = self.outer.hi - self.inner.hi
        point = self.outer.center.copy()
        axis_low, axis_high = int(np.argmax(low)), int(np.argmax(high))
        if low[axis_low] >= high[axis_high]:
            point[axis_low] = (self.outer.lo[axis_low] + self.inner.lo[axis_low]) / 2
        else:
            point[axis_high] = (self.inner.hi[axis_high] + self.outer.hi[axis_high]) / 2
        return point

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Uniform samples from the region by rejection from the outer box."""
        if self.volume <= 0:
            msg = "Cannot sample a zero-volume region"
            raise DegenerateBoxError(msg)
        samples: list[np.ndarray] = []
        while len(samples) < size:
            batch = rng.uniform(self.outer.lo, self.outer.hi, size=(max(size, 8), self.dim))
            samples.extend(p for p in batch if self.contains(p))
        return np.array(samples[:size])
