"""Distance tree and the box decomposition built on it."""
from .box_tree import BoxDecomposition, BoxNode, Cell, CellKind, RecordEvent, RecordLog, SplitKind
from .decomposer import AIDecomposer, DecompositionTask, NullObserver, RemovalObserver, ai_decompose
from .distance_tree import DistanceNode, DistanceTree, build_distance_tree
from .wspd import SpannerEdge, WellSeparatedPairs, WspdPair, build_spanner, build_wspd

__all__ = [
    "AIDecomposer",
    "BoxDecomposition",
    "BoxNode",
    "Cell",
    "CellKind",
    "DecompositionTask",
    "DistanceNode",
    "DistanceTree",
    "NullObserver",
    "RecordEvent",
    "RecordLog",
    "RemovalObserver",
    "SpannerEdge",
    "SplitKind",
    "WellSeparatedPairs",
    "WspdPair",
    "ai_decompose",
    "build_distance_tree",
    "build_spanner",
    "build_wspd",
]
