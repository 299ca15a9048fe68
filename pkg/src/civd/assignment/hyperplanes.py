"""Subsets of direction vectors cut off by hyperplanes through the origin."""
from __future__ import annotations

import itertools
import math
from collections.abc import Iterator

import numpy as np
import numpy.typing as npt

from civd import TOLERANCE
from civd.utils.exceptions import DegenerateSpanError, SingularQueryError


def _sides(vectors: np.ndarray, normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Masks of vectors strictly on the positive side and on the hyperplane itself."""
    projection = vectors @ normal
    slack = TOLERANCE * np.linalg.norm(vectors, axis=1)
    return projection > slack, np.abs(projection) <= slack


def _line_partitions(values: np.ndarray, indices: np.ndarray) -> Iterator[frozenset[int]]:
    for sign in (1.0, -1.0):
        yield frozenset(indices[sign * values > 0].tolist())


def _angular_sweep(vectors: np.ndarray, indices: np.ndarray) -> Iterator[frozenset[int]]:
    """Sweep the normal around the circle, stopping at and between the directions orthogonal to some vector."""
    angles = np.arctan2(vectors[:, 1], vectors[:, 0])
    critical = np.sort(np.concatenate([angles + math.pi / 2, angles - math.pi / 2]) % (2 * math.pi))
    following = np.append(critical[1:], critical[0] + 2 * math.pi)
    for angle in np.concatenate([critical, (critical + following) / 2]):
        positive, on_plane = _sides(vectors, np.array([math.cos(angle), math.sin(angle)]))
        yield frozenset(indices[positive].tolist())
        yield frozenset(indices[positive | on_plane].tolist())


def _orthonormal_complement(normal: np.ndarray) -> np.ndarray:
    """Rows spanning the hyperplane orthogonal to normal."""
    _, _, vt = np.linalg.svd(normal.reshape(1, -1))
    return vt[1:]


def _subset_normal(rows: np.ndarray) -> np.ndarray:
    """Unit normal of the hyperplane spanned by k-1 independent rows in R^k."""
    _, singular, vt = np.linalg.svd(rows)
    if singular.size < rows.shape[0] or singular[-1] <= TOLERANCE * max(singular[0], 1.0):
        raise DegenerateSpanError("The vectors are linearly dependent")
    return vt[-1]


def _vertex_partitions(vectors: np.ndarray, indices: np.ndarray) -> Iterator[frozenset[int]]:
    """Normals orthogonal to every (k-1)-subset, both orientations, each perturbed within its hyperplane."""
    dim = vectors.shape[1]
    if dim == 1:
        yield from _line_partitions(vectors[:, 0], indices)
        return
    if dim == 2:
        yield from _angular_sweep(vectors, indices)
        return
    _, singular, vt = np.linalg.svd(vectors)
    rank = int(np.sum(singular > TOLERANCE * max(singular[0], 1.0)))
    if rank < dim:
        # Normals orthogonal to the whole span cut nothing off
        yield frozenset()
        yield frozenset(indices.tolist())
        yield from _vertex_partitions(vectors @ vt[:rank].T, indices)
        return
    for subset in itertools.combinations(range(len(vectors)), dim - 1):
        try:
            normal = _subset_normal(vectors[list(subset)])
        except DegenerateSpanError:
            continue
        for oriented in (normal, -normal):
            positive, on_plane = _sides(vectors, oriented)
            base = frozenset(indices[positive].tolist())
            yield base
            yield base | frozenset(indices[on_plane].tolist())
            plane_basis = _orthonormal_complement(oriented)
            for part in _vertex_partitions(vectors[on_plane] @ plane_basis.T, indices[on_plane]):
                yield base | part


def enumerate_hyperplane_partitions(vectors: npt.ArrayLike) -> Iterator[frozenset[int]]:
    """Every distinct set {i : ⟨w, a_i⟩ > 0} or {i : ⟨w, a_i⟩ ≥ 0} over nonzero normals w.

    vectors are the offsets L(v) − q_c; the yielded sets hold row indices.
    """
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    if vectors.shape[0] == 0 or vectors.size == 0:
        yield frozenset()
        return
    if np.any(np.linalg.norm(vectors, axis=1) < TOLERANCE):
        raise SingularQueryError("A representative coincides with the query point")
    seen: set[frozenset[int]] = set()
    for subset in _vertex_partitions(vectors, np.arange(len(vectors))):
        if subset not in seen:
            seen.add(subset)
            yield subset
