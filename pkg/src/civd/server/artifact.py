"""JSON artifact holding a built CIVD, loadable into a query-capable CIVD."""
from __future__ import annotations

from pathlib import Path

import numpy as np
from loguru import logger
from pydantic import BaseModel, ValidationError

from civd.assignment import AggNode, AggregationTree
from civd.civd import CIVD, BuildStats, SiteDescriptor
from civd.decomposition import BoxDecomposition, BoxNode, Cell, CellKind, DistanceNode, DistanceTree, RecordLog, SplitKind
from civd.geometry import AxisBox, Region, RegionKind
from civd.influence import make_model
from civd.utils.exceptions import InputFileError

FORMAT_VERSION = 1


class BoxRecord(BaseModel):
    center: list[float]
    edge: float

    @classmethod
    def of(cls, box: AxisBox) -> BoxRecord:
        return cls(center=box.center.tolist(), edge=box.edge_length)

    def to_box(self) -> AxisBox:
        return AxisBox(np.array(self.center), self.edge)


class ArtifactMeta(BaseModel):
    format_version: int = FORMAT_VERSION
    model: str
    dim: int
    n: int
    epsilon: float
    beta: float
    t: float = 2.0
    locality_constant: float = 1.0
    stats: BuildStats | None = None


class DistanceNodeRecord(BaseModel):
    s: float
    rep: int
    children: tuple[int, int] | None
    size: int


class BoxNodeRecord(BaseModel):
    """Box node in preorder; children are given as offsets from the node's own position."""

    box: BoxRecord
    split: SplitKind
    children: list[int] = []
    cell: int | None = None


class CellRecord(BaseModel):
    kind: CellKind
    region: RegionKind
    box_node: int
    outer: BoxRecord
    inner: BoxRecord | None = None
    dominating_node: int | None = None
    r_prime_min: float | None = None
    record_tail: int = -1
    site: SiteDescriptor


class RecordEventRecord(BaseModel):
    node: int
    recorded_distance: float
    points_before: int
    position: int
    parent: int
    box_node: int


class AggNodeRecord(BaseModel):
    region: BoxRecord
    quadrant: BoxRecord
    label: int
    parent: int
    size: int
    start: int
    stop: int


class AggregationSection(BaseModel):
    nodes: list[AggNodeRecord]
    leaf_order: list[int]


class CivdArtifact(BaseModel):
    meta: ArtifactMeta
    points: list[list[float]]
    distance_tree: list[DistanceNodeRecord]
    box_tree: list[BoxNodeRecord]
    cells: list[CellRecord]
    records: list[RecordEventRecord]
    aggregation_tree: AggregationSection | None = None


def _preorder(decomposition: BoxDecomposition) -> list[int]:
    if decomposition.root is None:
        return []
    order, pending = [], [decomposition.root]
    while pending:
        node_id = pending.pop()
        order.append(node_id)
        pending.extend(reversed(decomposition.box_nodes[node_id].children))
    return order


def to_artifact(civd: CIVD) -> CivdArtifact:
    decomposition = civd.decomposition
    order = _preorder(decomposition)
    position = {node_id: index for index, node_id in enumerate(order)}
    box_tree = [
        BoxNodeRecord(
            box=BoxRecord.of(decomposition.box_nodes[node_id].box),
            split=decomposition.box_nodes[node_id].split,
            children=[position[child] - index for child in decomposition.box_nodes[node_id].children],
            cell=decomposition.box_nodes[node_id].cell,
        )
        for index, node_id in enumerate(order)
    ]
    cells = [
        CellRecord(
            kind=cell.kind,
            region=cell.region.kind,
            box_node=position[cell.box_node],
            outer=BoxRecord.of(cell.region.outer),
            inner=None if cell.region.inner is None else BoxRecord.of(cell.region.inner),
            dominating_node=cell.dominating_node,
            r_prime_min=cell.r_prime_min,
            record_tail=cell.record_tail,
            site=site,
        )
        for cell, site in zip(decomposition.cells, civd.sites, strict=True)
    ]
    records = [
        RecordEventRecord(
            node=event.node,
            recorded_distance=event.recorded_distance,
            points_before=event.points_before,
            position=event.position,
            parent=event.parent,
            box_node=position[event.box_node],
        )
        for event in decomposition.records.events
    ]
    aggregation = None
    if civd.aggregation is not None:
        aggregation = AggregationSection(
            nodes=[
                AggNodeRecord(
                    region=BoxRecord.of(node.region),
                    quadrant=BoxRecord.of(node.quadrant),
                    label=node.label,
                    parent=node.parent,
                    size=node.size,
                    start=node.start,
                    stop=node.stop,
                )
                for node in civd.aggregation.nodes
            ],
            leaf_order=civd.aggregation.leaf_order.tolist(),
        )
    model = civd.model
    return CivdArtifact(
        meta=ArtifactMeta(
            model=str(model.kind),
            dim=civd.dim,
            n=civd.n,
            epsilon=model.epsilon,
            beta=model.beta,
            t=getattr(model, "t", 2.0),
            locality_constant=getattr(model, "locality_constant", 1.0),
            stats=civd.stats,
        ),
        points=civd.points.tolist(),
        distance_tree=[
            DistanceNodeRecord(s=node.s, rep=node.rep, children=node.children, size=node.size)
            for node in decomposition.tree.nodes
        ],
        box_tree=box_tree,
        cells=cells,
        records=records,
        aggregation_tree=aggregation,
    )


def from_artifact(artifact: CivdArtifact) -> CIVD:
    meta = artifact.meta
    points = np.array(artifact.points, dtype=float).reshape(-1, meta.dim)
    model = make_model(meta.model, meta.dim, meta.epsilon, meta.t, meta.beta, meta.locality_constant)
    nodes = [
        DistanceNode(index, record.s, record.rep, record.children, record.size)
        for index, record in enumerate(artifact.distance_tree)
    ]
    for node in nodes:
        for child in node.children or ():
            nodes[child].parent = node.id
    tree = DistanceTree(points, meta.beta, nodes)

    box_nodes = [
        BoxNode(index, record.box.to_box(), record.split, [index + offset for offset in record.children], record.cell)
        for index, record in enumerate(artifact.box_tree)
    ]
    cells = [
        Cell(
            index,
            Region(record.region, record.outer.to_box(), None if record.inner is None else record.inner.to_box()),
            record.kind,
            record.box_node,
            dominating_node=record.dominating_node,
            r_prime_min=record.r_prime_min,
            record_tail=record.record_tail,
        )
        for index, record in enumerate(artifact.cells)
    ]
    records = RecordLog()
    for record in artifact.records:
        records.append(record.node, record.recorded_distance, record.points_before, record.parent, record.box_node)
    decomposition = BoxDecomposition(tree, box_nodes, cells, records, 0 if box_nodes else None)

    aggregation = None
    if artifact.aggregation_tree is not None:
        agg_nodes = [
            AggNode(
                index, record.region.to_box(), record.quadrant.to_box(), record.label, record.parent, record.size,
                record.start, record.stop,
            )
            for index, record in enumerate(artifact.aggregation_tree.nodes)
        ]
        for node in agg_nodes:
            if node.parent >= 0:
                agg_nodes[node.parent].children[node.label] = node.id
        aggregation = AggregationTree(points, agg_nodes, np.array(artifact.aggregation_tree.leaf_order, dtype=np.intp))
    return CIVD(points, model, decomposition, [cell.site for cell in artifact.cells], aggregation, meta.stats)


def save_artifact(civd: CIVD, path: Path) -> None:
    path.write_text(to_artifact(civd).model_dump_json())
    logger.info(f"CIVD artifact written to {path}")


def load_artifact(path: Path) -> CIVD:
    try:
        artifact = CivdArtifact.model_validate_json(path.read_bytes())
    except (OSError, ValidationError) as error:
        logger.exception(error)
        msg = f"Cannot read CIVD artifact {path}"
        raise InputFileError(msg) from error
    return from_artifact(artifact)
