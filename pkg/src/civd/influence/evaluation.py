"""Influence of weighted site multisets on a query point."""
from __future__ import annotations

import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from civd import TOLERANCE
from civd.geometry import Point, PointArray
from civd.influence.calculus import ball_volume_constant
from civd.utils.exceptions import DimensionMismatchError, EmptyInputError, SingularQueryError


class WeightedSite(NamedTuple):
    location: Point
    multiplicity: int = 1


class InfluenceValue(NamedTuple):
    magnitude: float
    direction: Point | None = None


def _as_arrays(sites: Sequence[WeightedSite]) -> tuple[PointArray, npt.NDArray[np.float64]]:
    if not sites:
        raise EmptyInputError("No sites to evaluate")
    locations = np.array([site.location for site in sites], dtype=float)
    multiplicities = np.array([site.multiplicity for site in sites], dtype=float)
    if np.any(multiplicities < 1):
        raise ValueError("Site multiplicities must be positive")
    return locations, multiplicities


def offsets_from(locations: PointArray, query: Point) -> tuple[PointArray, npt.NDArray[np.float64]]:
    """Vectors from query to each location and their lengths; rejects singular queries."""
    query = np.asarray(query, dtype=float)
    if locations.ndim != 2 or locations.shape[1] != query.size:
        msg = f"Sites are {locations.shape[-1]}-D but the query is {query.size}-D"
        raise DimensionMismatchError(msg)
    offsets = locations - query
    lengths = np.linalg.norm(offsets, axis=1)
    if lengths.size and lengths.min() < TOLERANCE:
        msg = f"Query {query.tolist()} coincides with a site"
        raise SingularQueryError(msg)
    return offsets, lengths


def vector_forces(locations: PointArray, multiplicities: npt.ArrayLike, query: Point, t: float) -> PointArray:
    """Per-site force vectors multiplicity · unit(L − q) · ‖L − q‖^(−t)."""
    offsets, lengths = offsets_from(locations, query)
    scale = np.asarray(multiplicities, dtype=float) * lengths ** (-t - 1)
    return offsets * scale[:, None]


def vector_influence(locations: PointArray, multiplicities: npt.ArrayLike, query: Point, t: float) -> InfluenceValue:
    total = vector_forces(locations, multiplicities, query, t).sum(axis=0)
    magnitude = float(np.linalg.norm(total))
    direction = total / magnitude if magnitude > 0 else None
    return InfluenceValue(magnitude, direction)


def density_influence(
    locations: PointArray,
    multiplicities: npt.ArrayLike,
    query: Point,
    dim: int,
) -> InfluenceValue:
    _, lengths = offsets_from(locations, query)
    radius = float(lengths.max())
    count = float(np.sum(multiplicities))
    return InfluenceValue(count * ball_volume_constant(dim) / radius**dim)


def eval_vector(sites: Sequence[WeightedSite], query: Point, t: float) -> InfluenceValue:
    """Magnitude and direction of the summed inverse-power forces of the sites on query."""
    locations, multiplicities = _as_arrays(sites)
    return vector_influence(locations, multiplicities, query, t)


def eval_density(sites: Sequence[WeightedSite], query: Point, dim: int) -> InfluenceValue:
    """Site count over the volume of the smallest query-centered ball enclosing the sites."""
    locations, multiplicities = _as_arrays(sites)
    return density_influence(locations, multiplicities, query, dim)


def unit_vector(rng: np.random.Generator, dim: int) -> Point:
    direction = rng.normal(size=dim)
    return direction / math.sqrt(float(direction @ direction))
