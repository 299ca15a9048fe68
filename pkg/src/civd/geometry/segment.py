"""Edge-versus-box classification used by the long-path search."""
from __future__ import annotations

from enum import Enum

import numpy as np

from civd import TOLERANCE
from civd.geometry.box import AxisBox, Segment


class EdgeRelation(Enum):
    DISJOINT = "disjoint"
    CUTS = "cuts"
    PASSES_THROUGH = "passes_through"
    CONTAINED = "contained"

    def __str__(self) -> str:
        return self.value


def _segment_hits_box(segment: Segment, box: AxisBox, tol: float) -> bool:
    """Liang-Barsky clipping of the segment against the closed box."""
    start, end = np.asarray(segment.start, dtype=float), np.asarray(segment.end, dtype=float)
    direction = end - start
    t_enter, t_exit = 0.0, 1.0
    for axis in range(box.dim):
        lo, hi = box.lo[axis] - tol, box.hi[axis] + tol
        if direction[axis] == 0:
            if not lo <= start[axis] <= hi:
                return False
            continue
        t_a = (lo - start[axis]) / direction[axis]
        t_b = (hi - start[axis]) / direction[axis]
        t_enter = max(t_enter, min(t_a, t_b))
        t_exit = min(t_exit, max(t_a, t_b))
        if t_enter > t_exit:
            return False
    return True


def box_edge_relation(segment: Segment, box: AxisBox, tol: float = TOLERANCE) -> EdgeRelation:
    """Classify an edge against a closed box.

    CUTS when exactly one endpoint is inside, PASSES_THROUGH when the edge crosses the box with both endpoints
    outside. A zero-length edge is CONTAINED or DISJOINT by its endpoint.
    """
    start_inside = box.contains_closed(segment.start, tol)
    end_inside = box.contains_closed(segment.end, tol)
    if start_inside and end_inside:
        return EdgeRelation.CONTAINED
    if start_inside or end_inside:
        return EdgeRelation.CUTS
    if _segment_hits_box(segment, box, tol):
        return EdgeRelation.PASSES_THROUGH
    return EdgeRelation.DISJOINT
