"""Site assignment for type-2 cells under the vector influence."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from loguru import logger

from civd.assignment.aggregation_tree import AggregationTree, build_aggregation_tree
from civd.assignment.effective_cover import CoverSearch, EffectiveCover
from civd.assignment.hyperplanes import enumerate_hyperplane_partitions
from civd.decomposition import Cell, CellKind
from civd.geometry import AxisBox, Point, PointArray
from civd.influence import VectorInfluence
from civd.influence.evaluation import vector_forces
from civd.utils.exceptions import EmptyCoverError


def query_box_edge(delta_inv: float, t: float, n: int, r_prime_min: float) -> float:
    """4(1 + Δ⁻¹)(Δ⁻¹)^(−1/t) n^(1/t) r′_min."""
    return 4 * (1 + delta_inv) * delta_inv ** (-1 / t) * n ** (1 / t) * r_prime_min


def query_box_B(cell: Cell, model: VectorInfluence, n: int) -> AxisBox:
    """Box centered at the cell's query point outside of which points can be treated as one far-away group."""
    if cell.kind is not CellKind.TYPE2 or cell.r_prime_min is None:
        msg = f"Cell {cell.id} is not a type-2 cell"
        raise ValueError(msg)
    edge = query_box_edge(model.delta_inv, model.t, n, cell.r_prime_min)
    return AxisBox(cell.region.representative_point(), edge)


@dataclass(frozen=True)
class VectorSite:
    """Aggregation-tree nodes whose union is the assigned site, with its influence at the cell's query point."""

    nodes: tuple[int, ...]
    value: float
    query: Point
    cover_size: int


class VectorAssigner:
    """Assigns every type-2 cell the best hyperplane-separated part of an effective cover around its query point."""

    def __init__(self, tree: AggregationTree, model: VectorInfluence, use_slow_find: bool = False) -> None:
        self.tree = tree
        self.model = model
        self.use_slow_find = use_slow_find
        self.sizes = np.array([node.size for node in tree.nodes])
        self.representatives = np.array([node.L for node in tree.nodes])

    @classmethod
    def from_points(cls, points: PointArray, model: VectorInfluence) -> VectorAssigner:
        return cls(build_aggregation_tree(points), model)

    @property
    def n(self) -> int:
        return len(self.tree.points)

    def cover(self, cell: Cell) -> EffectiveCover:
        box = query_box_B(cell, self.model, self.n)
        search = CoverSearch(self.tree, box.center, box, self.model.delta_inv)
        cover = search.slow_find() if self.use_slow_find else search.find()
        if not cover.nodes:
            msg = f"Query box of cell {cell.id} holds no input point"
            raise EmptyCoverError(msg)
        return cover

    def best_partition(self, nodes: list[int], query: Point) -> tuple[tuple[int, ...], float]:
        """Maximum-influence subset of nodes over all hyperplanes through query, ties going to the larger subset."""
        forces = vector_forces(self.representatives[nodes], self.sizes[nodes], query, self.model.t)
        best: tuple[int, ...] = ()
        best_value = -math.inf
        for subset in enumerate_hyperplane_partitions(self.representatives[nodes] - query):
            if not subset:
                continue
            members = sorted(subset)
            value = float(np.linalg.norm(forces[members].sum(axis=0)))
            if value > best_value or (value == best_value and len(members) > len(best)):
                best, best_value = tuple(nodes[i] for i in members), value
        return best, best_value

    def assign(self, cell: Cell) -> VectorSite:
        try:
            cover = self.cover(cell)
        except EmptyCoverError:
            query = cell.region.representative_point()
            nearest = int(np.argmin(np.linalg.norm(self.tree.points - query, axis=1)))
            logger.warning(f"Empty effective cover for cell {cell.id}, falling back to the nearest point {nearest}")
            leaf = int(self.tree.leaf_of_point[nearest])
            value = float(np.linalg.norm(vector_forces(self.representatives[[leaf]], [1], query, self.model.t)))
            return VectorSite((leaf,), value, query, 0)
        query = cover.query
        nodes, value = self.best_partition(cover.nodes, query)
        return VectorSite(nodes, value, query, len(cover.nodes))

    def points_of(self, site: VectorSite) -> npt.NDArray[np.intp]:
        return np.sort(np.concatenate([self.tree.points_of(node) for node in site.nodes]))


def assign_vector(tree: AggregationTree, model: VectorInfluence, cell: Cell) -> VectorSite:
    return VectorAssigner(tree, model).assign(cell)
