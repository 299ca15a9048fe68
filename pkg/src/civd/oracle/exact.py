"""Exact maximum influence sites by exhaustive or structured search, for small instances."""
from __future__ import annotations

import itertools
import math

import numpy as np
import numpy.typing as npt

from civd import TOLERANCE
from civd.assignment.hyperplanes import enumerate_hyperplane_partitions
from civd.geometry import Point, PointArray, as_point, as_points
from civd.influence import InfluenceModel, ModelKind, ball_volume_constant
from civd.influence.evaluation import offsets_from, vector_forces
from civd.utils.exceptions import TooLargeError, UnsupportedDimensionError

BRUTE_FORCE_CAP = 20
_CHUNK = 1 << 14

Site = tuple[npt.NDArray[np.intp], float]


def brute_max_vector(points: PointArray, query: Point, t: float, cap: int = BRUTE_FORCE_CAP) -> Site:
    """Best nonempty subset over all 2^n - 1 candidates."""
    points = as_points(points)
    query = as_point(query, points.shape[1])
    n = len(points)
    if n > cap:
        msg = f"Exhaustive vector oracle is capped at {cap} points, got {n}"
        raise TooLargeError(msg)
    forces = vector_forces(points, np.ones(n), query, t)
    powers = 1 << np.arange(n, dtype=np.int64)
    best_mask, best_value = 0, -math.inf
    for first in range(1, 1 << n, _CHUNK):
        masks = np.arange(first, min(first + _CHUNK, 1 << n), dtype=np.int64)
        members = (masks[:, None] & powers) > 0
        values = np.linalg.norm(members.astype(float) @ forces, axis=1)
        top = int(np.argmax(values))
        if values[top] > best_value:
            best_mask, best_value = int(masks[top]), float(values[top])
    return np.flatnonzero((best_mask & powers) > 0), best_value


def hyperplane_max_vector(points: PointArray, query: Point, t: float) -> Site:
    """Best subset among those cut off by a hyperplane through query."""
    points = as_points(points)
    query = as_point(query, points.shape[1])
    forces = vector_forces(points, np.ones(len(points)), query, t)
    best: list[int] = []
    best_value = -math.inf
    for subset in enumerate_hyperplane_partitions(points - query):
        if not subset:
            continue
        members = sorted(subset)
        value = float(np.linalg.norm(forces[members].sum(axis=0)))
        if value > best_value:
            best, best_value = members, value
    return np.array(best, dtype=np.intp), best_value


def density_scan_max(points: PointArray, query: Point, dim: int | None = None) -> Site:
    """Densest cluster: the best distance-suffix in one pass over points sorted farthest first."""
    points = as_points(points, dim)
    query = as_point(query, points.shape[1])
    _, lengths = offsets_from(points, query)
    order = np.argsort(-lengths, kind="stable")
    n, dim = points.shape
    values = ball_volume_constant(dim) * (n - np.arange(n)) / lengths[order] ** dim
    start = int(np.argmax(values))
    return np.sort(order[start:]), float(values[start])


def max_influence(points: PointArray, query: Point, model: InfluenceModel) -> Site:
    """Exact optimum for the model, picking the cheapest oracle that stays exact."""
    points = as_points(points)
    if model.kind is ModelKind.DENSITY:
        return density_scan_max(points, query)
    if len(points) <= BRUTE_FORCE_CAP:
        return brute_max_vector(points, query, model.t)  # type: ignore[attr-defined]
    if points.shape[1] <= 2 or len(points) <= 2 * BRUTE_FORCE_CAP:
        return hyperplane_max_vector(points, query, model.t)  # type: ignore[attr-defined]
    msg = f"No exact vector oracle for {len(points)} points in {points.shape[1]} dimensions"
    raise TooLargeError(msg)


def is_maximal_pair(cluster: PointArray, query: Point, model: InfluenceModel) -> bool:
    """Whether no nonempty subset of cluster has a larger influence on query."""
    cluster = as_points(cluster)
    value = model.influence(cluster, query)
    _, best = max_influence(cluster, query, model)
    return value >= best * (1 - TOLERANCE)


def _closed_side_separable(offsets: PointArray, inside: np.ndarray, normals: PointArray) -> bool:
    projections = offsets @ normals.T
    slack = TOLERANCE * np.linalg.norm(offsets, axis=1)[:, None]
    feasible = np.all(projections[inside] >= -slack[inside], axis=0)
    feasible &= np.all(projections[~inside] < -slack[~inside], axis=0)
    return bool(feasible.any())


def is_hyperplane_separable(points: PointArray, subset: npt.ArrayLike, query: Point) -> bool:
    """Whether a hyperplane through query splits points into subset and the rest.

    Points on the hyperplane may join either side, as long as they all join the same one.
    """
    points = as_points(points)
    offsets = points - as_point(query, points.shape[1])
    inside = np.zeros(len(points), dtype=bool)
    inside[np.asarray(subset, dtype=np.intp)] = True
    dim = points.shape[1]
    if dim == 1:
        normals = np.array([[1.0], [-1.0]])
    elif dim == 2:
        angles = np.arctan2(offsets[:, 1], offsets[:, 0])
        critical = np.concatenate([angles + math.pi / 2, angles - math.pi / 2])
        bisectors = [(a + b) / 2 for a, b in itertools.combinations(critical, 2)]
        candidates = np.concatenate([critical, bisectors, np.add(bisectors, math.pi)])
        normals = np.column_stack([np.cos(candidates), np.sin(candidates)])
    else:
        msg = f"Exact separability test is only available for d <= 2, got d={dim}"
        raise UnsupportedDimensionError(msg)
    return _closed_side_separable(offsets, inside, normals) or _closed_side_separable(offsets, ~inside, normals)
