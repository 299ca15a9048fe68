import math

import numpy as np
import pytest

from civd.civd import CIVD
from civd.influence import DensityInfluence, VectorInfluence
from civd.oracle import OracleReport, check_query, sample_queries, summarize, validate_civd
from civd.oracle.validation import boundary_gap, sampling_box


@pytest.fixture(scope="module")
def line_civd():
    points = np.array([[0.0], [0.3], [0.5], [4.0], [9.0]])
    return CIVD.build(points, VectorInfluence(1, 0.3, t=1))


def test_sample_queries_stay_clear(line_civd):
    queries = sample_queries(line_civd, 100, np.random.default_rng(1))
    box = sampling_box(line_civd)
    assert queries.shape == (100, 1)
    assert all(box.contains_closed(query) for query in queries)
    gaps = np.abs(queries - line_civd.points.T).min(axis=1)
    assert gaps.min() > 1e-6 * box.edge_length
    for query in queries:
        cell = line_civd.locate(query)
        if cell is not None:
            assert cell.region.boundary_distance(query) > 1e-6 * box.edge_length


def test_boundary_gap_on_cell_corner(line_civd):
    corners = [
        cell.region.outer.lo
        for cell in line_civd.cells
        if cell.region.inner is None and np.abs(line_civd.points - cell.region.outer.lo).min() > 1e-6
    ]
    assert corners
    assert boundary_gap(line_civd, corners[0]) == 0.0
    assert boundary_gap(line_civd, [1000.0]) > 0


def test_sampling_box_of_single_point():
    civd = CIVD.build([[2.0, 3.0]], VectorInfluence(2, 0.3, beta=0.3))
    box = sampling_box(civd)
    assert box.edge_length == 2.0
    assert np.array_equal(box.center, [2.0, 3.0])


def test_vector_diagram_passes(line_civd):
    reports = validate_civd(line_civd, 150, seed=3, threads=2)
    assert len(reports) == 150
    summary = summarize(reports, line_civd.model.epsilon)
    assert summary.passed
    assert summary.min_ratio >= 0.7 * (1 - 1e-9)


def test_density_diagram_passes():
    points = np.array([[0.0], [0.2], [0.3], [3.0], [7.5], [8.0], [8.1]])
    civd = CIVD.build(points, DensityInfluence(1, 0.2))
    reports = validate_civd(civd, 150, seed=4)
    assert all(report.passed for report in reports)


def test_report_serializes_pass_alias(line_civd):
    report = check_query(line_civd, [2.0])
    dumped = report.model_dump(by_alias=True)
    assert dumped["pass"] is report.passed
    assert OracleReport.model_validate(dumped) == report


def test_empty_summary():
    summary = summarize([], 0.1)
    assert summary.passed
    assert summary.min_ratio == math.inf
    assert summary.threshold == pytest.approx(0.9)


@pytest.mark.slow
@pytest.mark.parametrize(
    "model",
    [DensityInfluence(2, 0.2, beta=0.1), VectorInfluence(2, 0.2, t=1, beta=0.1), VectorInfluence(2, 0.2, t=2, beta=0.1)],
    ids=["density", "vector-t1", "vector-t2"],
)
def test_planar_diagram_passes(model):
    points = np.random.default_rng(31).uniform(0, 10, size=(12, 2))
    civd = CIVD.build(points, model)
    reports = validate_civd(civd, 300, seed=5, threads=4)
    summary = summarize(reports, model.epsilon)
    assert summary.samples == 300
    assert summary.passed, f"min ratio {summary.min_ratio}"
