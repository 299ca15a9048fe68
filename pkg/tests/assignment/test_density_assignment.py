import math

import numpy as np
import pytest

from civd.assignment import DensityObserver, DensityPathState, extract_cluster
from civd.decomposition import CellKind, RecordLog, ai_decompose, build_distance_tree
from civd.decomposition.decomposer import AIDecomposer
from civd.influence import DensityInfluence
from civd.oracle import density_scan_max
from civd.utils.exceptions import MissingObserverError


def _replay(observer, distances):
    log, state, tail = RecordLog(), observer.initial_state(), -1
    recorded = 0
    for node, distance in enumerate(distances):
        event = log.append(node, distance, recorded, tail, 0)
        state = observer.on_record(state, event)
        tail, recorded = event.id, recorded + int(observer.sizes[node])
    return state


def test_first_event_density():
    observer = DensityObserver(4, 2, np.ones(4))
    state = _replay(observer, [1.0])
    assert state.best_value == pytest.approx(4 / math.pi)
    assert state.points_recorded == 1


def test_sorted_scan_best_suffix():
    observer = DensityObserver(4, 2, np.ones(4))
    state = _replay(observer, [10.0, 1.0, 1.0, 1.0])
    assert state.best_value == pytest.approx(3 / math.pi)
    assert state.best_position == 1
    assert state.best_node == 1
    assert state.points_recorded == 4


def test_ties_keep_earlier_event():
    observer = DensityObserver(2, 1, np.ones(2))
    state = _replay(observer, [2.0, 1.0])
    assert state.best_position == 0


def test_initial_state():
    assert DensityPathState() == DensityPathState(0, -math.inf, -1, -1, -1, -1)


@pytest.fixture(scope="module")
def density_decomposition():
    points = np.array([[0.0], [0.2], [0.3], [3.0], [7.5], [8.0], [8.1], [8.15]])
    model = DensityInfluence(1, 0.2)
    tree = build_distance_tree(points, model.beta)
    return points, model, AIDecomposer(tree, model, DensityObserver.from_tree(tree)).run()


def test_clusters_are_record_suffixes(density_decomposition):
    _, _, decomposition = density_decomposition
    for cell in decomposition.cells_of_kind(CellKind.TYPE2)[:300]:
        cluster = extract_cluster(decomposition, cell)
        sequence = decomposition.record_sequence(cell)
        expected = np.concatenate([decomposition.tree.points_of(e.node) for e in sequence[cluster.suffix_start :]])
        assert cluster.points.tolist() == sorted(expected.tolist())


def test_clusters_are_near_optimal(density_decomposition):
    points, model, decomposition = density_decomposition
    rng = np.random.default_rng(3)
    for cell in decomposition.cells_of_kind(CellKind.TYPE2)[::5]:
        cluster = extract_cluster(decomposition, cell)
        for query in cell.region.sample(rng, 3):
            _, best = density_scan_max(points, query)
            assert model.influence(points[cluster.points], query) >= (1 - model.epsilon) * best


def test_missing_observer():
    decomposition = ai_decompose(np.array([[0.0], [1.0], [5.0]]), DensityInfluence(1, 0.2, beta=0.3))
    cell = decomposition.cells_of_kind(CellKind.TYPE2)[0]
    with pytest.raises(MissingObserverError) as excinfo:
        extract_cluster(decomposition, cell)
    assert "without density tracking" in str(excinfo.value)


def test_type1_cell_has_no_cluster(density_decomposition):
    _, _, decomposition = density_decomposition
    with pytest.raises(ValueError):
        extract_cluster(decomposition, decomposition.cells_of_kind(CellKind.TYPE1)[0])
