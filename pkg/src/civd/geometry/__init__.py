"""Points, boxes and regions."""
from .box import AxisBox, Segment, dist_point_box, smallest_enclosing_box, split_box
from .point import Point, PointArray, as_point, as_points, ensure_distinct, find_duplicates
from .region import Region, RegionKind
from .segment import EdgeRelation, box_edge_relation

__all__ = [
    "AxisBox",
    "EdgeRelation",
    "Point",
    "PointArray",
    "Region",
    "RegionKind",
    "Segment",
    "as_point",
    "as_points",
    "box_edge_relation",
    "dist_point_box",
    "ensure_distinct",
    "find_duplicates",
    "smallest_enclosing_box",
    "split_box",
]
