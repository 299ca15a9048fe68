"""Effective covers of a query box: aggregation-tree nodes that are small relative to their distance to q_c."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from civd.assignment.aggregation_tree import AggregationTree
from civd.geometry import AxisBox, EdgeRelation, Point, Segment, box_edge_relation


@dataclass
class EffectiveCover:
    nodes: list[int]
    query: Point
    query_box: AxisBox
    touched: int = 0


@dataclass
class CoverSearch:
    """Cover search for one (q_c, B) pair.

    A node is reported when S(v) ≤ Δ⁻¹·‖q_c − L(v)‖ / (3d). `touched` counts node inspections.
    """

    tree: AggregationTree
    query: Point
    query_box: AxisBox
    delta_inv: float
    touched: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        self.query = np.asarray(self.query, dtype=float)
        self.smallness = self.delta_inv / (3 * self.tree.dim)
        self.box_lo, self.box_hi = self.query_box.lo, self.query_box.hi
        self.box_edges = self.query_box.edges()

    # Steps 1 to 4 of one iteration

    def intersects(self, node_id: int) -> bool:
        self.touched += 1
        return bool(
            np.all(self.tree.region_lo[node_id] <= self.box_hi) and np.all(self.box_lo <= self.tree.region_hi[node_id]),
        )

    def is_small(self, node_id: int) -> bool:
        node = self.tree.nodes[node_id]
        return node.S <= self.smallness * math.dist(self.query, node.L)

    def quadrants_hit(self, node_id: int) -> list[int]:
        """Labels of the closed quadrants of R(v) that meet B."""
        center = self.tree.nodes[node_id].L
        low, high = self.box_lo <= center, self.box_hi >= center
        labels = [1]
        for axis in range(self.tree.dim):
            bit = 1 << axis
            sides = ([0] if low[axis] else []) + ([bit] if high[axis] else [])
            labels = [label + side for label in labels for side in sides]
        return labels

    def chain_next(self, node_id: int) -> int | None:
        """Child taken by the Step-5 loop, or None if Steps 1 to 4 end the loop at this node."""
        if not self.intersects(node_id) or self.is_small(node_id):
            return None
        hits = self.quadrants_hit(node_id)
        if len(hits) != 1:
            return None
        return self.tree.nodes[node_id].children.get(hits[0])

    def _visit(self, node_id: int, cover: list[int], pending: list[int]) -> None:
        """Outcome of a node at which the loop stops: report it, fan out, or drop it."""
        if not self.intersects(node_id):
            return
        if self.is_small(node_id):
            cover.append(node_id)
            return
        hits = self.quadrants_hit(node_id)
        if len(hits) > 1:
            children = self.tree.nodes[node_id].children
            pending.extend(children[label] for label in reversed(hits) if label in children)

    # Searches

    def slow_find(self, start: int | None = None) -> EffectiveCover:
        """Literal search: walk the chain one node at a time."""
        cover: list[int] = []
        pending = [self.tree.root if start is None else start]
        while pending:
            node_id = pending.pop()
            following = self.chain_next(node_id)
            while following is not None:
                node_id = following
                following = self.chain_next(node_id)
            self._visit(node_id, cover, pending)
        return EffectiveCover(cover, self.query, self.query_box, self.touched)

    def find(self, start: int | None = None) -> EffectiveCover:
        """Same cover as slow_find; long chains are skipped with the i-path and majority-path indexes."""
        cover: list[int] = []
        pending = [self.tree.root if start is None else start]
        while pending:
            node_id = self.chain_end(pending.pop())
            self._visit(node_id, cover, pending)
        return EffectiveCover(cover, self.query, self.query_box, self.touched)

    def chain_end(self, node_id: int) -> int:
        """First node of the chain from node_id where the loop stops."""
        while True:
            following = self.chain_next(node_id)
            if following is None:
                return node_id
            contained = [edge for edge in self.box_edges if self._region_contains(following, edge)]
            if not contained:
                node_id = self._ipath_end(following)
            elif self._spans_box(contained):
                node_id = self.tree.find_tail(following, self._contains_box)
            else:
                node_id = following

    def _region_contains(self, node_id: int, edge: Segment) -> bool:
        region = self.tree.nodes[node_id].region
        return box_edge_relation(edge, region, tol=0.0) is EdgeRelation.CONTAINED

    def _spans_box(self, edges: list[Segment]) -> bool:
        """Whether the bounding box of the edges is all of B."""
        lo = np.min([np.minimum(edge.start, edge.end) for edge in edges], axis=0)
        hi = np.max([np.maximum(edge.start, edge.end) for edge in edges], axis=0)
        return bool(np.all(lo == self.box_lo) and np.all(hi == self.box_hi))

    def _contains_box(self, node_id: int) -> bool:
        self.touched += 1
        return bool(np.all(self.tree.region_lo[node_id] <= self.box_lo) and np.all(self.box_hi <= self.tree.region_hi[node_id]))

    def _ipath_end(self, node_id: int) -> int:
        """Binary search along the i-path of node_id for the first node that does not continue along it.

        With no edge of B inside R(v), B covers one corner of R(v), so the loop keeps following the same label
        until it stops, and stays stopped further down the path.
        """
        if self.chain_next(node_id) is None:
            return node_id
        label = self.quadrants_hit(node_id)[0]
        path_id, position = self.tree.ipath_ref[node_id, label - 1]
        path = self.tree.ipaths[label][path_id]
        lo, hi = int(position), len(path) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if mid + 1 < len(path) and self.chain_next(path[mid]) == path[mid + 1]:
                lo = mid + 1
            else:
                hi = mid
        return path[lo]
