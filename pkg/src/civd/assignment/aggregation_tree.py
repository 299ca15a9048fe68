"""Shrink-wrapped quad tree over the input points, with i-path and majority-path indexes."""
from __future__ import annotations

import bisect
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
from loguru import logger

from civd.geometry import AxisBox, PointArray, as_points, smallest_enclosing_box, split_box


@dataclass(slots=True)
class AggNode:
    """Node v with its shrunk box R(v), the quadrant R′(v) of the parent it was cut from and its orthant label."""

    id: int
    region: AxisBox
    quadrant: AxisBox
    label: int
    parent: int
    size: int
    start: int = 0
    stop: int = 0
    children: dict[int, int] = field(default_factory=dict)

    @property
    def S(self) -> float:
        return self.region.edge_length

    @property
    def L(self) -> np.ndarray:
        return self.region.center


@dataclass
class MajorityPath:
    """Heavy chain of nodes plus a weight-balanced search tree over its positions."""

    nodes: list[int]
    root: int
    left: list[int]
    right: list[int]


def weighted_search_tree(weights: list[float]) -> tuple[int, list[int], list[int]]:
    """Binary search tree over positions, splitting every range at its weighted median."""
    size = len(weights)
    prefix = [0.0]
    for weight in weights:
        prefix.append(prefix[-1] + weight)
    left, right = [-1] * size, [-1] * size

    def median(lo: int, hi: int) -> int:
        target = (prefix[lo] + prefix[hi + 1]) / 2
        pos = bisect.bisect_left(prefix, target, lo + 1, hi + 1) - 1
        return min(max(pos, lo), hi)

    root = median(0, size - 1)
    pending = [(root, 0, size - 1)]
    while pending:
        pos, lo, hi = pending.pop()
        if lo < pos:
            left[pos] = median(lo, pos - 1)
            pending.append((left[pos], lo, pos - 1))
        if pos < hi:
            right[pos] = median(pos + 1, hi)
            pending.append((right[pos], pos + 1, hi))
    return root, left, right


class AggregationTree:
    def __init__(self, points: PointArray, nodes: list[AggNode], leaf_order: npt.NDArray[np.intp]) -> None:
        self.points = points
        self.nodes = nodes
        self.leaf_order = leaf_order
        self.dim = points.shape[1]
        self.region_lo = np.array([node.region.lo for node in nodes])
        self.region_hi = np.array([node.region.hi for node in nodes])
        self.leaf_of_point = np.empty(len(points), dtype=np.intp)
        for node in nodes:
            if node.size == 1:
                self.leaf_of_point[leaf_order[node.start]] = node.id
        self._index_subtrees()
        self._index_ipaths()
        self._index_majority_paths()

    @property
    def root(self) -> int:
        return 0

    def points_of(self, node_id: int) -> npt.NDArray[np.intp]:
        node = self.nodes[node_id]
        return self.leaf_order[node.start : node.stop]

    def _index_subtrees(self) -> None:
        self.subtree_nodes = [1] * len(self.nodes)
        self.heavy_child = [-1] * len(self.nodes)
        # Children always have larger ids than their parent
        for node in reversed(self.nodes):
            if node.children:
                self.subtree_nodes[node.id] += sum(self.subtree_nodes[c] for c in node.children.values())
                labels = sorted(node.children)
                heavy = max(labels, key=lambda label: (self.subtree_nodes[node.children[label]], -label))
                self.heavy_child[node.id] = node.children[heavy]

    def _index_ipaths(self) -> None:
        """For every label i, maximal chains v, i-child(v), i-child(i-child(v)), ..."""
        labels = range(1, (1 << self.dim) + 1)
        self.ipaths: dict[int, list[list[int]]] = {label: [] for label in labels}
        self.ipath_ref = np.zeros((len(self.nodes), 1 << self.dim, 2), dtype=np.intp)
        for label in labels:
            paths = self.ipaths[label]
            for node in self.nodes:
                if node.parent >= 0 and node.label == label:
                    continue
                path = [node.id]
                while label in self.nodes[path[-1]].children:
                    path.append(self.nodes[path[-1]].children[label])
                for position, member in enumerate(path):
                    self.ipath_ref[member, label - 1] = (len(paths), position)
                paths.append(path)

    def _index_majority_paths(self) -> None:
        self.majority_paths: list[MajorityPath] = []
        self.majority_ref = np.zeros((len(self.nodes), 2), dtype=np.intp)
        self.weights = [
            self.subtree_nodes[node.id] - (self.subtree_nodes[self.heavy_child[node.id]] if node.children else 0)
            for node in self.nodes
        ]
        for node in self.nodes:
            if node.parent >= 0 and self.heavy_child[node.parent] == node.id:
                continue
            path = [node.id]
            while self.heavy_child[path[-1]] >= 0:
                path.append(self.heavy_child[path[-1]])
            for position, member in enumerate(path):
                self.majority_ref[member] = (len(self.majority_paths), position)
            root, left, right = weighted_search_tree([self.weights[member] for member in path])
            self.majority_paths.append(MajorityPath(path, root, left, right))
        logger.debug(f"Aggregation tree: {len(self.nodes)} nodes, {len(self.majority_paths)} majority paths")

    def find_tail(self, start: int, in_z: Callable[[int], bool]) -> int:
        """Last node of the root-path Z containing start, given a membership predicate that holds on a prefix.

        Each majority path is searched through its weighted tree, then the search moves to the (unique) child in Z
        hanging off the path, if any.
        """
        node = start
        while True:
            path = self.majority_paths[self.majority_ref[node, 0]]
            best, pos = -1, path.root
            while pos >= 0:
                if in_z(path.nodes[pos]):
                    best, pos = pos, path.right[pos]
                else:
                    pos = path.left[pos]
            tail = path.nodes[best]
            following = [child for _, child in sorted(self.nodes[tail].children.items()) if in_z(child)]
            if not following:
                return tail
            node = following[0]


def _quadrant_labels(coords: npt.NDArray[np.float64], center: npt.NDArray[np.float64]) -> npt.NDArray[np.intp]:
    above = coords >= center
    # A midpoint rounded onto the low end puts every point above it
    flat = above.all(axis=0) & (coords.max(axis=0) > coords.min(axis=0))
    above[:, flat] = coords[:, flat] > center[flat]
    return 1 + (above * (1 << np.arange(coords.shape[1]))).sum(axis=1)


def build_aggregation_tree(points: PointArray) -> AggregationTree:
    """Quad-split each R(v) and shrink every non-empty quadrant to the smallest hypercube around its points."""
    points = as_points(points)
    nodes: list[AggNode] = []
    order: list[int] = []
    # (indices, parent, label, quadrant) to open a node, (node id,) to close it
    pending: list[tuple] = [(np.arange(len(points)), -1, 0, None)]
    while pending:
        item = pending.pop()
        if len(item) == 1:
            nodes[item[0]].stop = len(order)
            continue
        indices, parent, label, quadrant = item
        region = smallest_enclosing_box(points[indices])
        node = AggNode(len(nodes), region, quadrant or region, label, parent, len(indices), start=len(order))
        nodes.append(node)
        if parent >= 0:
            nodes[parent].children[label] = node.id
        if len(indices) == 1:
            order.append(int(indices[0]))
            node.stop = len(order)
            continue
        pending.append((node.id,))
        quadrants = split_box(region)
        labels = _quadrant_labels(points[indices], np.asarray(region.center))
        for child_label in sorted(set(labels.tolist()), reverse=True):
            pending.append((indices[labels == child_label], node.id, child_label, quadrants[child_label - 1]))
    return AggregationTree(points, nodes, np.array(order, dtype=np.intp))
