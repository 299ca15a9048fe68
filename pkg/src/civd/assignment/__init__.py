"""Site assignment for type-2 cells."""
from .aggregation_tree import AggNode, AggregationTree, MajorityPath, build_aggregation_tree
from .density import DensityCluster, DensityObserver, DensityPathState, extract_cluster
from .effective_cover import CoverSearch, EffectiveCover
from .hyperplanes import enumerate_hyperplane_partitions
from .vector import VectorAssigner, VectorSite, assign_vector, query_box_B, query_box_edge

__all__ = [
    "AggNode",
    "AggregationTree",
    "CoverSearch",
    "DensityCluster",
    "DensityObserver",
    "DensityPathState",
    "EffectiveCover",
    "MajorityPath",
    "VectorAssigner",
    "VectorSite",
    "assign_vector",
    "build_aggregation_tree",
    "enumerate_hyperplane_partitions",
    "extract_cluster",
    "query_box_B",
    "query_box_edge",
]
