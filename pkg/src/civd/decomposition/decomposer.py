"""Recursive box decomposition into type-1 and type-2 cells."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Protocol

import numpy as np
from loguru import logger

from civd import TOLERANCE
from civd.decomposition.box_tree import BoxDecomposition, BoxNode, Cell, CellKind, RecordEvent, RecordLog, SplitKind
from civd.decomposition.distance_tree import DistanceTree, build_distance_tree
from civd.geometry import AxisBox, PointArray, Region, split_box
from civd.influence import InfluenceModel
from civd.utils.exceptions import CivdError


class RemovalObserver(Protocol):
    """Hook called for every distance-node removed from the live list.

    The state is immutable; the decomposer hands the state of the parent box to each child box so that it only
    depends on the events of one root-to-leaf path.
    """

    def initial_state(self) -> Any: ...

    def on_record(self, state: Any, event: RecordEvent) -> Any: ...


class NullObserver:
    def initial_state(self) -> None:
        return None

    def on_record(self, state: None, event: RecordEvent) -> None:
        return None


@dataclass(frozen=True, slots=True)
class DecompositionTask:
    """Arguments of one recursive call: box-node u, live list L, r_c and the path state."""

    box_node: int
    live: tuple[int, ...]
    r_c: float = math.inf
    record_tail: int = -1
    points_recorded: int = 0
    observer_state: Any = None
    depth: int = 0


class AIDecomposer:
    max_depth = 512

    def __init__(self, tree: DistanceTree, model: InfluenceModel, observer: RemovalObserver | None = None) -> None:
        self.tree = tree
        self.model = model
        self.beta = tree.beta
        self.observer = observer or NullObserver()
        # β / (2𝒫(n)), the domination threshold of Step 4
        self.domination_ratio = self.beta / (2 * model.domination_poly(tree.n))
        self.box_nodes: list[BoxNode] = []
        self.cells: list[Cell] = []
        self.records = RecordLog()

    def new_box_node(self, box: AxisBox) -> int:
        self.box_nodes.append(BoxNode(len(self.box_nodes), box))
        return len(self.box_nodes) - 1

    def _new_cell(self, box_node: int, region: Region, kind: CellKind, **kwargs: Any) -> Cell:
        cell = Cell(len(self.cells), region, kind, box_node, **kwargs)
        self.cells.append(cell)
        self.box_nodes[box_node].cell = cell.id
        return cell

    def run(self) -> BoxDecomposition:
        if self.tree.n == 1:
            logger.debug("Single input point: no cells, the point is the site everywhere")
            return BoxDecomposition(self.tree, [], [], self.records, None)
        root = self.new_box_node(self.tree.e_box(self.tree.root))
        pending = [DecompositionTask(root, (self.tree.root,), observer_state=self.observer.initial_state())]
        while pending:
            pending.extend(reversed(self.decompose_node(pending.pop())))
        logger.debug(
            f"Decomposition: {len(self.box_nodes)} box nodes, {len(self.cells)} cells, {len(self.records)} records",
        )
        return BoxDecomposition(self.tree, self.box_nodes, self.cells, self.records, root)

    def _intersections(self, box: AxisBox, live: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        lo = np.maximum(box.lo, self.tree.e_lo[live])
        hi = np.minimum(box.hi, self.tree.e_hi[live])
        return lo, hi

    def _refine(self, box: AxisBox, live: np.ndarray) -> np.ndarray:
        """Step 1: replace nodes whose E(v) overlaps B(u) along at least half its edge by their children."""
        half = box.edge_length / 2
        while True:
            lo, hi = self._intersections(box, live)
            extent = hi - lo
            significant = (
                np.all(extent >= -TOLERANCE, axis=1)
                & (extent.max(axis=1) >= half - TOLERANCE)
                & self.tree.has_children[live]
            )
            if not significant.any():
                return live
            live = np.concatenate([live[~significant], self.tree.children[live[significant]].ravel()])

    def decompose_node(self, task: DecompositionTask) -> list[DecompositionTask]:
        """Steps 1 to 5 on one box-node; returns the recursive calls still to be made."""
        if task.depth > self.max_depth:
            msg = f"Decomposition exceeded depth {self.max_depth}, points are too close for float precision"
            raise CivdError(msg)
        node = self.box_nodes[task.box_node]
        box = node.box
        live = self._refine(box, np.array(task.live, dtype=np.intp))

        # Step 2, farthest nodes first, ties by creation index
        reps = self.tree.rep_coords[live]
        gaps = np.maximum(0.0, np.maximum(box.lo - reps, reps - box.hi))
        distances = np.linalg.norm(gaps, axis=1)
        order = np.lexsort((live, -distances))
        live, distances = live[order], distances[order]
        removable = box.diameter < distances * self.beta / 2
        r_c, tail, recorded, state = task.r_c, task.record_tail, task.points_recorded, task.observer_state
        for node_id, distance in zip(live[removable].tolist(), distances[removable].tolist(), strict=True):
            event = self.records.append(node_id, distance, recorded, tail, task.box_node)
            state = self.observer.on_record(state, event)
            tail = event.id
            recorded += int(self.tree.sizes[node_id])
            r_c = min(r_c, distance)
        live, distances = live[~removable], distances[~removable]

        # Step 3
        if live.size == 0:
            self._new_cell(
                task.box_node, Region.box(box), CellKind.TYPE2, r_prime_min=r_c, record_tail=tail, path_state=state,
            )
            return []

        def child_task(box_node: int, child_live: tuple[int, ...]) -> DecompositionTask:
            return DecompositionTask(box_node, child_live, r_c, tail, recorded, state, task.depth + 1)

        # Step 4
        if live.size == 1 and distances[0] + box.diameter < r_c * self.domination_ratio:
            node_id = int(live[0])
            lo, hi = self._intersections(box, live)
            if self.tree.is_leaf(node_id) or not np.all(hi - lo > TOLERANCE):
                self._new_cell(task.box_node, Region.box(box), CellKind.TYPE1, dominating_node=node_id)
                return []
            inner = self._nested_box(box, lo[0], hi[0])
            node.split = SplitKind.DIFFERENCE
            inner_node = self.new_box_node(inner)
            node.children.append(inner_node)
            if inner.edge_length < box.edge_length - TOLERANCE:
                outer_node = self.new_box_node(box)
                node.children.append(outer_node)
                self._new_cell(outer_node, Region.difference(box, inner), CellKind.TYPE1, dominating_node=node_id)
            return [child_task(inner_node, tuple(self.tree.children[node_id].tolist()))]

        # Step 5
        node.split = SplitKind.QUAD
        remaining = tuple(live.tolist())
        tasks = []
        for child in split_box(box):
            child_node = self.new_box_node(child)
            node.children.append(child_node)
            tasks.append(child_task(child_node, remaining))
        return tasks

    @staticmethod
    def _nested_box(box: AxisBox, lo: np.ndarray, hi: np.ndarray) -> AxisBox:
        """Smallest hypercube containing [lo, hi], shifted the least amount needed to sit inside box."""
        edge = float(np.max(hi - lo))
        if edge >= box.edge_length:
            return box
        corner = np.clip((lo + hi - edge) / 2, box.lo, box.hi - edge)
        return AxisBox(corner + edge / 2, edge)


def ai_decompose(
    points: PointArray | DistanceTree,
    model: InfluenceModel,
    observer: RemovalObserver | None = None,
) -> BoxDecomposition:
    """Decompose E(root) of the distance tree of points into type-1 and type-2 cells."""
    tree = points if isinstance(points, DistanceTree) else build_distance_tree(points, model.beta)
    return AIDecomposer(tree, model, observer).run()
