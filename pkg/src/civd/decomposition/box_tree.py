"""Box tree, cells and record events produced by the decomposition."""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
import numpy.typing as npt

from civd import TOLERANCE
from civd.decomposition.distance_tree import DistanceTree
from civd.geometry import AxisBox, Point, Region, as_point
from civd.utils.exceptions import SingularQueryError


class SplitKind(Enum):
    LEAF = "leaf"
    QUAD = "quad"
    DIFFERENCE = "difference"

    def __str__(self) -> str:
        return self.value


class CellKind(Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"

    def __str__(self) -> str:
        return self.value


@dataclass(slots=True)
class BoxNode:
    id: int
    box: AxisBox
    split: SplitKind = SplitKind.LEAF
    children: list[int] = field(default_factory=list)
    cell: int | None = None


@dataclass(slots=True)
class Cell:
    """A leaf region of the box tree.

    Type-1 cells are dominated by `dominating_node`. Type-2 cells keep r′_min (the r_c at finalization) and the
    tail of the record sequence of their root-to-leaf path; `path_state` is whatever the removal observer tracked.
    """

    id: int
    region: Region
    kind: CellKind
    box_node: int
    dominating_node: int | None = None
    r_prime_min: float | None = None
    record_tail: int = -1
    path_state: Any = None

    @property
    def removal_path_id(self) -> int:
        return self.record_tail


@dataclass(frozen=True, slots=True)
class RecordEvent:
    id: int
    node: int
    recorded_distance: float
    points_before: int
    position: int
    parent: int
    box_node: int


class RecordLog:
    """Record events of all paths; each event links to its predecessor on the same path."""

    def __init__(self) -> None:
        self.events: list[RecordEvent] = []

    def __len__(self) -> int:
        return len(self.events)

    def __getitem__(self, event_id: int) -> RecordEvent:
        return self.events[event_id]

    def append(self, node: int, distance: float, points_before: int, parent: int, box_node: int) -> RecordEvent:
        position = self.events[parent].position + 1 if parent >= 0 else 0
        event = RecordEvent(len(self.events), node, distance, points_before, position, parent, box_node)
        self.events.append(event)
        return event

    def walk_back(self, tail: int) -> Iterator[RecordEvent]:
        """Events from tail back to the first event of its path."""
        while tail >= 0:
            event = self.events[tail]
            yield event
            tail = event.parent

    def sequence(self, tail: int) -> list[RecordEvent]:
        """Record sequence ending at tail, in recording order."""
        return list(reversed(list(self.walk_back(tail))))


def ensure_not_singular(points: np.ndarray, query: Point) -> None:
    gaps = np.linalg.norm(points - query, axis=1)
    if gaps.min() < TOLERANCE:
        msg = f"Query {np.asarray(query).tolist()} coincides with input point {int(gaps.argmin())}"
        raise SingularQueryError(msg)


@dataclass
class BoxDecomposition:
    """The box tree over E(root) with its cells. `root` is None when there is a single input point."""

    tree: DistanceTree
    box_nodes: list[BoxNode]
    cells: list[Cell]
    records: RecordLog
    root: int | None

    @property
    def beta(self) -> float:
        return self.tree.beta

    @property
    def root_box(self) -> AxisBox | None:
        return None if self.root is None else self.box_nodes[self.root].box

    def locate(self, query: Point) -> Cell | None:
        """Leaf cell containing query, or None when query lies outside the root box."""
        query = as_point(query, self.tree.dim)
        ensure_not_singular(self.tree.points, query)
        if self.root is None:
            return None
        node = self.box_nodes[self.root]
        if not node.box.contains(query):
            return None
        while node.children:
            if node.split is SplitKind.QUAD:
                node = self.box_nodes[node.children[node.box.orthant_of(query) - 1]]
                continue
            inner = self.box_nodes[node.children[0]]
            if len(node.children) == 1 or inner.box.contains(query):
                node = inner
            else:
                node = self.box_nodes[node.children[1]]
        assert node.cell is not None, "every leaf of the box tree carries a cell"
        return self.cells[node.cell]

    def record_sequence(self, cell: Cell) -> list[RecordEvent]:
        return self.records.sequence(cell.record_tail)

    def recorded_points(self, cell: Cell) -> npt.NDArray[np.intp]:
        """Union of the point sets recorded on the path of cell."""
        chunks = [self.tree.points_of(event.node) for event in self.records.walk_back(cell.record_tail)]
        if not chunks:
            return np.empty(0, dtype=np.intp)
        return np.concatenate(chunks)

    def cells_of_kind(self, kind: CellKind) -> list[Cell]:
        return [cell for cell in self.cells if cell.kind is kind]
