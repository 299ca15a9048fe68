"""Well-separated pair decomposition over a fair split tree."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
from loguru import logger

from civd.geometry import PointArray, as_points, ensure_distinct

SEPARATION = 12.0


@dataclass(frozen=True, slots=True)
class SplitNode:
    indices: npt.NDArray[np.intp]
    center: tuple[float, ...]
    radius: float
    children: tuple[int, int] | None


class FairSplitTree:
    """Binary space partition splitting each bounding rectangle at the midpoint of its longest side."""

    def __init__(self, points: PointArray) -> None:
        self.points = points
        self.nodes: list[SplitNode] = []
        self.representatives: list[int] = []
        self._build()

    def _build(self) -> None:
        pending: list[tuple[int, npt.NDArray[np.intp]]] = [(-1, np.arange(len(self.points)))]
        parents: list[int] = []
        while pending:
            parent, indices = pending.pop()
            node_id = len(self.nodes)
            coords = self.points[indices]
            lo, hi = coords.min(axis=0), coords.max(axis=0)
            center = (lo + hi) / 2
            children = None
            if len(indices) > 1:
                axis = int(np.argmax(hi - lo))
                low_side = coords[:, axis] < center[axis]
                if low_side.all() or not low_side.any():
                    # Midpoint rounded onto an endpoint: split by rank along the axis instead
                    ranks = np.argsort(np.argsort(coords[:, axis], kind="stable"), kind="stable")
                    low_side = ranks < len(indices) // 2
                # Children ids are patched once they exist
                children = (-1, -1)
                pending.append((node_id, indices[~low_side]))
                pending.append((node_id, indices[low_side]))
            self.nodes.append(
                SplitNode(indices, tuple(center.tolist()), float(np.linalg.norm(hi - lo)) / 2, children),
            )
            parents.append(parent)
        self._link_children(parents)
        self._pick_representatives()

    def _link_children(self, parents: list[int]) -> None:
        children: dict[int, list[int]] = {}
        for node_id, parent in enumerate(parents):
            if parent >= 0:
                children.setdefault(parent, []).append(node_id)
        for parent, (first, second) in children.items():
            node = self.nodes[parent]
            self.nodes[parent] = SplitNode(node.indices, node.center, node.radius, (first, second))

    def _pick_representatives(self) -> None:
        """Lexicographically smallest point of each node, computed bottom-up."""
        self.representatives = [-1] * len(self.nodes)
        for node_id in reversed(range(len(self.nodes))):
            node = self.nodes[node_id]
            if node.children is None:
                self.representatives[node_id] = int(node.indices[0])
            else:
                reps = [self.representatives[child] for child in node.children]
                self.representatives[node_id] = min(reps, key=lambda i: tuple(self.points[i]))

    @property
    def root(self) -> int:
        return 0

    def well_separated(self, a: int, b: int, separation: float = SEPARATION) -> bool:
        """Two balls of the common radius r around the sets are at least separation·r apart."""
        node_a, node_b = self.nodes[a], self.nodes[b]
        radius = max(node_a.radius, node_b.radius)
        return math.dist(node_a.center, node_b.center) - 2 * radius >= separation * radius


class WspdPair(NamedTuple):
    a: int
    b: int
    rep_a: int
    rep_b: int


@dataclass
class WellSeparatedPairs:
    split_tree: FairSplitTree
    pairs: list[WspdPair]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def points_of(self, handle: int) -> npt.NDArray[np.intp]:
        return self.split_tree.nodes[handle].indices


def build_wspd(points: PointArray, separation: float = SEPARATION) -> WellSeparatedPairs:
    """Cover every unordered pair of distinct points by exactly one well-separated pair of subsets."""
    points = as_points(points)
    ensure_distinct(points)
    tree = FairSplitTree(points)
    pairs: list[WspdPair] = []
    pending = [node.children for node in tree.nodes if node.children is not None]
    while pending:
        a, b = pending.pop()
        if tree.well_separated(a, b, separation):
            pairs.append(WspdPair(a, b, tree.representatives[a], tree.representatives[b]))
            continue
        # Split the larger set, it is never a single point here
        if tree.nodes[a].radius < tree.nodes[b].radius:
            a, b = b, a
        first, second = tree.nodes[a].children
        pending.append((second, b))
        pending.append((first, b))
    logger.debug(f"WSPD: {len(pairs)} pairs over {len(points)} points")
    return WellSeparatedPairs(tree, pairs)


class SpannerEdge(NamedTuple):
    u: int
    v: int
    weight: float


def build_spanner(points: PointArray, wspd: WellSeparatedPairs) -> list[SpannerEdge]:
    """One edge between the representatives of every pair; a 2-spanner of the points."""
    return [
        SpannerEdge(pair.rep_a, pair.rep_b, math.dist(points[pair.rep_a], points[pair.rep_b]))
        for pair in wspd
    ]
