"""Bottom-up merge tree over the spanner: each node bounds the diameter of its point set."""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from loguru import logger

from civd.decomposition.wspd import SpannerEdge, build_spanner, build_wspd
from civd.geometry import AxisBox, Point, PointArray, as_points, ensure_distinct
from civd.utils.exceptions import CivdError, InvalidConfigurationError


@dataclass(slots=True)
class DistanceNode:
    id: int
    s: float
    rep: int
    children: tuple[int, int] | None
    size: int
    parent: int = -1
    start: int = 0
    stop: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.children is None


class DistanceTree:
    """Tree whose node v carries s(v) ≥ diam(P_v), the representative l(v) ∈ P_v and the guard boxes E, E′.

    Leaves are nodes 0..n-1 (node i holds point i); internal nodes are numbered in merge order.
    """

    def __init__(self, points: PointArray, beta: float, nodes: list[DistanceNode]) -> None:
        if not 0 < beta < 0.5:
            msg = f"beta must be in (0, 1/2), got {beta}"
            raise InvalidConfigurationError(msg)
        self.points = points
        self.beta = beta
        self.nodes = nodes
        self.root = len(nodes) - 1
        self.leaf_order = self._assign_ranges()
        self.s = np.array([node.s for node in nodes])
        self.sizes = np.array([node.size for node in nodes])
        self.rep_coords = points[[node.rep for node in nodes]]
        self.children = np.array([node.children or (-1, -1) for node in nodes], dtype=np.intp)
        self.has_children = self.children[:, 0] >= 0
        half = 4 * self.s / beta
        self.e_lo = self.rep_coords - half[:, None]
        self.e_hi = self.rep_coords + half[:, None]

    def _assign_ranges(self) -> npt.NDArray[np.intp]:
        order: list[int] = []
        stack = [(self.root, False)]
        while stack:
            node_id, done = stack.pop()
            node = self.nodes[node_id]
            if done:
                node.stop = len(order)
                continue
            node.start = len(order)
            if node.children is None:
                order.append(node_id)
                node.stop = len(order)
                continue
            stack.append((node_id, True))
            first, second = node.children
            stack.append((second, False))
            stack.append((first, False))
        return np.array(order, dtype=np.intp)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def is_leaf(self, node_id: int) -> bool:
        return self.nodes[node_id].children is None

    def points_of(self, node_id: int) -> npt.NDArray[np.intp]:
        """Indices of P_v, a contiguous slice of the leaf order."""
        node = self.nodes[node_id]
        return self.leaf_order[node.start : node.stop]

    def representative(self, node_id: int) -> Point:
        return self.rep_coords[node_id]

    def e_box(self, node_id: int) -> AxisBox:
        """E(v): edge 8·s(v)/β around l(v)."""
        return AxisBox(self.rep_coords[node_id], 8 * self.s[node_id] / self.beta)

    def e_prime_box(self, node_id: int) -> AxisBox:
        """E′(v): edge 4·s(v)/β around l(v)."""
        return AxisBox(self.rep_coords[node_id], 4 * self.s[node_id] / self.beta)


def merge_spanner_edges(n: int, edges: list[SpannerEdge]) -> list[DistanceNode]:
    """Kruskal-style merging of the spanner edges, shortest first, ties by edge index."""
    nodes = [DistanceNode(i, 0.0, i, None, 1) for i in range(n)]
    union_parent = list(range(n))
    tree_of = list(range(n))

    def find(i: int) -> int:
        while union_parent[i] != i:
            union_parent[i] = union_parent[union_parent[i]]
            i = union_parent[i]
        return i

    queue = [(edge.weight, index, edge.u, edge.v) for index, edge in enumerate(edges)]
    heapq.heapify(queue)
    while len(nodes) < 2 * n - 1:
        if not queue:
            raise CivdError("The spanner does not connect all points")
        weight, _, p1, p2 = heapq.heappop(queue)
        root1, root2 = find(p1), find(p2)
        if root1 == root2:
            continue
        first, second = nodes[tree_of[root1]], nodes[tree_of[root2]]
        rep = first.rep if first.size >= second.size else second.rep
        merged = DistanceNode(len(nodes), first.s + second.s + weight, rep, (first.id, second.id), first.size + second.size)
        first.parent = second.parent = merged.id
        nodes.append(merged)
        union_parent[root2] = root1
        tree_of[root1] = merged.id
    return nodes


def build_distance_tree(points: PointArray, beta: float) -> DistanceTree:
    points = as_points(points)
    ensure_distinct(points)
    if len(points) == 1:
        return DistanceTree(points, beta, [DistanceNode(0, 0.0, 0, None, 1)])
    wspd = build_wspd(points)
    edges = build_spanner(points, wspd)
    tree = DistanceTree(points, beta, merge_spanner_edges(len(points), edges))
    logger.debug(f"Distance tree: {len(tree.nodes)} nodes, s(root)={tree.s[tree.root]:.6g}")
    return tree
