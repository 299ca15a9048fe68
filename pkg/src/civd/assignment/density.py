"""Densest-cluster tracking along the recursion paths of the decomposition."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from civd.decomposition import BoxDecomposition, Cell, CellKind, DistanceTree, RecordEvent
from civd.influence import ball_volume_constant
from civd.utils.exceptions import MissingObserverError


class DensityPathState(NamedTuple):
    """Points recorded so far on one path and the densest suffix seen."""

    points_recorded: int = 0
    best_value: float = -math.inf
    best_event: int = -1
    best_position: int = -1
    best_node: int = -1
    best_box_node: int = -1


class DensityObserver:
    """Removal observer computing D = c_d(n − M) / r^d at every record, before M is updated."""

    def __init__(self, n: int, dim: int, sizes: npt.ArrayLike) -> None:
        self.n = n
        self.dim = dim
        self.sizes = np.asarray(sizes)
        self.constant = ball_volume_constant(dim)

    @classmethod
    def from_tree(cls, tree: DistanceTree) -> DensityObserver:
        return cls(tree.n, tree.dim, tree.sizes)

    def initial_state(self) -> DensityPathState:
        return DensityPathState()

    def density(self, points_before: int, radius: float) -> float:
        return self.constant * (self.n - points_before) / radius**self.dim

    def on_record(self, state: DensityPathState, event: RecordEvent) -> DensityPathState:
        value = self.density(state.points_recorded, event.recorded_distance)
        recorded = state.points_recorded + int(self.sizes[event.node])
        if value > state.best_value:
            return DensityPathState(recorded, value, event.id, event.position, event.node, event.box_node)
        return state._replace(points_recorded=recorded)


@dataclass(frozen=True)
class DensityCluster:
    """Suffix of the record sequence of a cell, starting at the densest event."""

    decomposition: BoxDecomposition
    cell: Cell
    suffix_start: int
    value: float
    node: int
    box_node: int

    @cached_property
    def points(self) -> npt.NDArray[np.intp]:
        chunks = []
        for event in self.decomposition.records.walk_back(self.cell.record_tail):
            if event.position < self.suffix_start:
                break
            chunks.append(self.decomposition.tree.points_of(event.node))
        return np.sort(np.concatenate(chunks)) if chunks else np.empty(0, dtype=np.intp)


def extract_cluster(decomposition: BoxDecomposition, cell: Cell) -> DensityCluster:
    if cell.kind is not CellKind.TYPE2:
        msg = f"Cell {cell.id} is a type-1 cell, its site is the dominating distance node"
        raise ValueError(msg)
    state = cell.path_state
    if not isinstance(state, DensityPathState):
        msg = f"Cell {cell.id} was built without density tracking"
        raise MissingObserverError(msg)
    return DensityCluster(
        decomposition, cell, state.best_position, state.best_value, state.best_node, state.best_box_node,
    )
