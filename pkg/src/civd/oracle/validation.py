"""Sampled comparison of a CIVD against the exact oracles."""
from __future__ import annotations

import math
from functools import partial

import anyio
import numpy as np
from anyio import to_thread
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from civd import TOLERANCE
from civd.civd import CIVD
from civd.geometry import AxisBox, Point, PointArray, dist_point_box
from civd.oracle.exact import max_influence

GROWTH = 0.25
CLEARANCE = 1e-6


class OracleReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    query: list[float]
    cell: int | None
    exact_value: float
    approx_value: float
    ratio: float
    passed: bool = Field(alias="pass")


class ValidationSummary(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    samples: int
    failures: int
    min_ratio: float
    threshold: float
    passed: bool = Field(alias="pass")


def sampling_box(civd: CIVD) -> AxisBox:
    """Root box grown by a quarter of its edge on every side."""
    root = civd.decomposition.root_box
    if root is None:
        return AxisBox(civd.points[0], 2.0)
    return AxisBox(root.center, root.edge_length * (1 + 2 * GROWTH))


def sample_queries(civd: CIVD, samples: int, rng: np.random.Generator) -> PointArray:
    """Uniform queries around the diagram that keep clear of the input points and of every cell boundary."""
    box = sampling_box(civd)
    clearance = max(CLEARANCE * box.edge_length, TOLERANCE)
    accepted: list[np.ndarray] = []
    while len(accepted) < samples:
        batch = rng.uniform(box.lo, box.hi, size=(samples, civd.dim))
        gaps = np.linalg.norm(batch[:, None, :] - civd.points[None, :, :], axis=2).min(axis=1)
        accepted.extend(query for query in batch[gaps > clearance] if boundary_gap(civd, query) > clearance)
    return np.array(accepted[:samples])


def boundary_gap(civd: CIVD, query: Point) -> float:
    """Distance from query to the boundary of its cell, or to the root box when it lies outside."""
    cell = civd.locate(query)
    if cell is not None:
        return cell.region.boundary_distance(query)
    root = civd.decomposition.root_box
    return math.inf if root is None else dist_point_box(query, root)


def check_query(civd: CIVD, query: Point) -> OracleReport:
    result = civd.query(query)
    _, exact = max_influence(civd.points, query, civd.model)
    ratio = result.value / exact if exact > 0 else math.inf
    threshold = (1 - civd.model.epsilon) * (1 - TOLERANCE)
    return OracleReport(
        query=list(result.query),
        cell=result.cell,
        exact_value=exact,
        approx_value=result.value,
        ratio=ratio,
        passed=ratio >= threshold,
    )


async def _check_all(civd: CIVD, queries: PointArray, threads: int) -> list[OracleReport]:
    limiter = anyio.CapacityLimiter(threads)
    reports: list[OracleReport | None] = [None] * len(queries)

    async def check(index: int) -> None:
        reports[index] = await to_thread.run_sync(partial(check_query, civd, queries[index]), limiter=limiter)

    async with anyio.create_task_group() as tg:
        for index in range(len(queries)):
            tg.start_soon(check, index)
    return [report for report in reports if report is not None]


def validate_civd(civd: CIVD, samples: int, seed: int = 0, threads: int = 1) -> list[OracleReport]:
    """Compare the influence of the located site with the exact optimum at random queries."""
    queries = sample_queries(civd, samples, np.random.default_rng(seed))
    reports = anyio.run(_check_all, civd, queries, threads)
    failures = sum(not report.passed for report in reports)
    logger.info(f"Validated {len(reports)} queries, {failures} below the 1-{civd.model.epsilon} threshold")
    return reports


def summarize(reports: list[OracleReport], epsilon: float) -> ValidationSummary:
    failures = sum(not report.passed for report in reports)
    return ValidationSummary(
        samples=len(reports),
        failures=failures,
        min_ratio=min((report.ratio for report in reports), default=math.inf),
        threshold=1 - epsilon,
        passed=failures == 0,
    )
