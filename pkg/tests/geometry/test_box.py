import math

import numpy as np
import pytest

from civd.geometry import AxisBox, dist_point_box, smallest_enclosing_box, split_box
from civd.utils.exceptions import DegenerateBoxError, DimensionMismatchError


def test_half_open_membership():
    box = AxisBox([0.5, 0.5], 1.0)
    assert box.contains([0.0, 0.0])
    assert box.contains([0.999, 0.5])
    assert not box.contains([1.0, 0.5])
    assert not box.contains([0.5, 1.0])
    assert box.contains_closed([1.0, 1.0])


def test_box_properties():
    box = AxisBox([0.0, 0.0, 0.0], 2.0)
    assert box.dim == 3
    assert box.volume == 8.0
    assert box.diameter == pytest.approx(2 * math.sqrt(3))
    assert np.array_equal(box.lo, [-1, -1, -1])
    assert len(box.corners()) == 8
    assert len(box.edges()) == 12


def test_dimension_mismatch():
    box = AxisBox([0.0, 0.0], 1.0)
    with pytest.raises(DimensionMismatchError) as excinfo:
        box.contains([0.0, 0.0, 0.0])
    assert "Dimension mismatch" in str(excinfo.value)


def test_dist_point_box():
    box = AxisBox([0.5, 0.5], 1.0)
    assert dist_point_box([0.2, 0.7], box) == 0.0
    assert dist_point_box([4.0, 5.0], box) == pytest.approx(5.0)
    assert dist_point_box([-2.0, 0.5], box) == pytest.approx(2.0)


def test_split_box_labels():
    box = AxisBox([0.0, 0.0], 4.0)
    children = split_box(box)
    assert len(children) == 4
    for label, child in enumerate(children, start=1):
        assert child.edge_length == 2.0
        assert box.orthant_of(child.center) == label
    assert np.array_equal(children[0].center, [-1.0, -1.0])
    assert np.array_equal(children[1].center, [1.0, -1.0])
    assert np.array_equal(children[3].center, [1.0, 1.0])


def test_split_children_partition_parent(rng):
    box = AxisBox([0.3, -1.2, 2.0], 3.0)
    children = split_box(box)
    for point in rng.uniform(box.lo, box.hi, size=(200, 3)):
        assert sum(child.contains(point) for child in children) == 1


def test_split_zero_box():
    with pytest.raises(DegenerateBoxError):
        split_box(AxisBox([1.0], 0.0))


def test_smallest_enclosing_box():
    box = smallest_enclosing_box([[0.0, 0.0], [4.0, 1.0]])
    assert box.edge_length == 4.0
    assert np.array_equal(box.center, [2.0, 0.5])
    single = smallest_enclosing_box([[3.0, 3.0]])
    assert single.edge_length == 0.0


def test_intersects_is_closed():
    a = AxisBox([0.5, 0.5], 1.0)
    assert a.intersects(AxisBox([1.5, 0.5], 1.0))
    assert not a.intersects(AxisBox([1.6, 0.5], 1.0))
    assert a.contains_box(AxisBox([0.25, 0.25], 0.5))
