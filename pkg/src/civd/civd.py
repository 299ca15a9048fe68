"""Approximate clustering-induced Voronoi diagram: build once, then answer maximum-influence-site queries."""
from __future__ import annotations

import time
from enum import Enum

import numpy as np
import numpy.typing as npt
from loguru import logger
from pydantic import BaseModel

from civd import __version__
from civd.assignment import AggregationTree, DensityObserver, VectorAssigner, build_aggregation_tree, extract_cluster
from civd.decomposition import AIDecomposer, BoxDecomposition, Cell, CellKind, build_distance_tree
from civd.geometry import Point, PointArray, as_point, as_points, ensure_distinct
from civd.influence import InfluenceModel, ModelKind, VectorInfluence


class SiteKind(str, Enum):
    ALL = "all"
    DISTANCE_NODE = "distance_node"
    AGGREGATION_NODES = "aggregation_nodes"
    RECORD_SUFFIX = "record_suffix"

    def __str__(self) -> str:
        return self.value


class SiteDescriptor(BaseModel):
    """Reference to a site through tree node ids; never an inline point list."""

    kind: SiteKind
    distance_node: int | None = None
    aggregation_nodes: list[int] = []
    record_tail: int = -1
    suffix_start: int = -1
    value: float | None = None


class BuildStats(BaseModel):
    n: int
    dim: int
    model: str
    epsilon: float
    beta: float
    delta_inv: float
    t: float | None = None
    type1_cells: int = 0
    type2_cells: int = 0
    box_nodes: int = 0
    record_events: int = 0
    wall_time: float = 0.0
    backend: str = f"civd v. {__version__}"


class QueryResult(BaseModel):
    query: list[float]
    cell: int | None
    site_kind: SiteKind
    site: list[int]
    value: float


OUTSIDE = SiteDescriptor(kind=SiteKind.ALL)


class CIVD:
    """Cells of the box decomposition with one site descriptor per cell."""

    def __init__(
        self,
        points: PointArray,
        model: InfluenceModel,
        decomposition: BoxDecomposition,
        sites: list[SiteDescriptor],
        aggregation: AggregationTree | None = None,
        stats: BuildStats | None = None,
    ) -> None:
        self.points = points
        self.model = model
        self.decomposition = decomposition
        self.sites = sites
        self.aggregation = aggregation
        self.stats = stats

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def cells(self) -> list[Cell]:
        return self.decomposition.cells

    @classmethod
    def build(cls, points: PointArray, model: InfluenceModel, fast_find: bool = True) -> CIVD:
        points = as_points(points, model.dim)
        ensure_distinct(points)
        logger.info(f"Building CIVD of {len(points)} points with {model}")
        started = time.perf_counter()
        tree = build_distance_tree(points, model.beta)
        observer = DensityObserver.from_tree(tree) if model.kind is ModelKind.DENSITY else None
        decomposition = AIDecomposer(tree, model, observer).run()

        aggregation = None
        if isinstance(model, VectorInfluence) and decomposition.cells:
            aggregation = build_aggregation_tree(points)
            assigner = VectorAssigner(aggregation, model, use_slow_find=not fast_find)
        sites = []
        for cell in decomposition.cells:
            if cell.kind is CellKind.TYPE1:
                sites.append(SiteDescriptor(kind=SiteKind.DISTANCE_NODE, distance_node=cell.dominating_node))
            elif aggregation is not None:
                site = assigner.assign(cell)
                sites.append(
                    SiteDescriptor(kind=SiteKind.AGGREGATION_NODES, aggregation_nodes=list(site.nodes), value=site.value),
                )
            else:
                cluster = extract_cluster(decomposition, cell)
                sites.append(
                    SiteDescriptor(
                        kind=SiteKind.RECORD_SUFFIX,
                        record_tail=cell.record_tail,
                        suffix_start=cluster.suffix_start,
                        value=cluster.value,
                    ),
                )

        type2 = len(decomposition.cells_of_kind(CellKind.TYPE2))
        stats = BuildStats(
            n=len(points),
            dim=model.dim,
            model=str(model.kind),
            epsilon=model.epsilon,
            beta=model.beta,
            delta_inv=model.delta_inv,
            t=getattr(model, "t", None),
            type1_cells=len(decomposition.cells) - type2,
            type2_cells=type2,
            box_nodes=len(decomposition.box_nodes),
            record_events=len(decomposition.records),
            wall_time=time.perf_counter() - started,
        )
        logger.info(f"Built {stats.type1_cells} type-1 and {stats.type2_cells} type-2 cells in {stats.wall_time:.2f}s")
        return cls(points, model, decomposition, sites, aggregation, stats)

    def locate(self, query: Point) -> Cell | None:
        """Cell containing query, None outside the root box (and always when n = 1)."""
        return self.decomposition.locate(query)

    def descriptor(self, cell: Cell | None) -> SiteDescriptor:
        return OUTSIDE if cell is None else self.sites[cell.id]

    def site_points(self, descriptor: SiteDescriptor) -> npt.NDArray[np.intp]:
        """Sorted indices of the points of a site."""
        if descriptor.kind is SiteKind.DISTANCE_NODE:
            assert descriptor.distance_node is not None
            members = self.decomposition.tree.points_of(descriptor.distance_node)
        elif descriptor.kind is SiteKind.AGGREGATION_NODES:
            assert self.aggregation is not None, "vector sites need the aggregation tree"
            members = np.concatenate([self.aggregation.points_of(node) for node in descriptor.aggregation_nodes])
        elif descriptor.kind is SiteKind.RECORD_SUFFIX:
            chunks = []
            for event in self.decomposition.records.walk_back(descriptor.record_tail):
                if event.position < descriptor.suffix_start:
                    break
                chunks.append(self.decomposition.tree.points_of(event.node))
            members = np.concatenate(chunks)
        else:
            members = np.arange(self.n)
        return np.sort(members)

    def site(self, query: Point) -> npt.NDArray[np.intp]:
        return self.site_points(self.descriptor(self.locate(query)))

    def query(self, query: Point) -> QueryResult:
        query = as_point(query, self.dim)
        cell = self.locate(query)
        descriptor = self.descriptor(cell)
        members = self.site_points(descriptor)
        return QueryResult(
            query=query.tolist(),
            cell=None if cell is None else cell.id,
            site_kind=descriptor.kind,
            site=members.tolist(),
            value=self.model.influence(self.points[members], query),
        )

    def __repr__(self) -> str:
        return f"CIVD(n={self.n}, dim={self.dim}, cells={len(self.cells)}, model={self.model!r})"
