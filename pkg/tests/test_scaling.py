import math
import time

import numpy as np
import pytest

from civd.assignment import CoverSearch, build_aggregation_tree
from civd.decomposition import ai_decompose
from civd.geometry import AxisBox
from civd.influence import DensityInfluence, VectorInfluence

pytestmark = pytest.mark.slow


def _spread(values: list[float]) -> float:
    return max(values) / min(values)


def test_cover_search_grows_polylogarithmically(rng):
    """Covers of boxes around random queries stay O(log n) in size and O(log² n) in touched nodes."""
    cover_ratios, touched_ratios = [], []
    for n in [1000, 4000, 16000]:
        tree = build_aggregation_tree(rng.uniform(0, 1, size=(n, 1)))
        covers, touched = [], []
        for query in rng.uniform(0, 1, size=(40, 1)):
            cover = CoverSearch(tree, query, AxisBox(query, 2.0), 0.3).find()
            covers.append(len(cover.nodes))
            touched.append(cover.touched)
        cover_ratios.append(max(covers) / math.log2(n))
        touched_ratios.append(float(np.mean(touched)) / math.log2(n) ** 2)
    assert _spread(cover_ratios) < 2, cover_ratios
    assert _spread(touched_ratios) < 2, touched_ratios


@pytest.mark.parametrize(
    "model",
    [DensityInfluence(1, 0.2, beta=0.25), VectorInfluence(1, 0.2, t=2, beta=0.25)],
    ids=["density", "vector"],
)
def test_cell_count_is_n_log_n(model, rng):
    ratios, seconds = [], []
    for n in [50, 200, 800]:
        points = rng.uniform(0, 100, size=(n, 1))
        start = time.perf_counter()
        decomposition = ai_decompose(points, model)
        seconds.append(time.perf_counter() - start)
        ratios.append(len(decomposition.cells) / (n * math.log2(n)))
    assert _spread(ratios) < 3, ratios
    assert all(later / earlier < 12 for earlier, later in zip(seconds, seconds[1:])), seconds
