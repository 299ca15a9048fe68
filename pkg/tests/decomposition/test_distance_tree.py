import itertools

import numpy as np
import pytest

from civd.decomposition import build_distance_tree
from civd.utils.exceptions import DuplicatePointsError, InvalidConfigurationError


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_distance_tree_invariants(dim, rng):
    points = rng.uniform(-5, 5, size=(40, dim))
    tree = build_distance_tree(points, beta=0.25)
    assert len(tree.nodes) == 2 * len(points) - 1
    assert tree.sizes[tree.root] == len(points)
    assert sorted(tree.points_of(tree.root).tolist()) == list(range(len(points)))
    for node in tree.nodes:
        members = tree.points_of(node.id)
        assert len(members) == node.size
        assert node.rep in members
        diameter = max((np.linalg.norm(points[i] - points[j]) for i, j in itertools.combinations(members, 2)), default=0)
        assert diameter <= node.s + 1e-12
        if node.children is not None:
            first, second = node.children
            assert set(tree.points_of(first)) | set(tree.points_of(second)) == set(members)
            assert tree.nodes[first].parent == tree.nodes[second].parent == node.id


def test_guard_boxes():
    tree = build_distance_tree([[0.0, 0.0], [1.0, 0.0], [5.0, 5.0]], beta=0.25)
    root = tree.root
    assert tree.e_box(root).edge_length == pytest.approx(32 * tree.s[root])
    assert tree.e_prime_box(root).edge_length == pytest.approx(16 * tree.s[root])
    assert np.array_equal(tree.e_box(root).center, tree.representative(root))


def test_single_point():
    tree = build_distance_tree([[1.0, 2.0]], beta=0.25)
    assert tree.root == 0
    assert tree.is_leaf(0)
    assert tree.s[0] == 0.0


def test_duplicates_rejected():
    with pytest.raises(DuplicatePointsError) as excinfo:
        build_distance_tree([[0.0], [1.0], [0.0]], beta=0.25)
    assert excinfo.value.duplicates == [(0, 2)]


def test_beta_range():
    with pytest.raises(InvalidConfigurationError):
        build_distance_tree([[0.0], [1.0]], beta=0.5)


def test_points_one_ulp_apart():
    tree = build_distance_tree(np.array([[1.0], [np.nextafter(1.0, 2.0)]]), 0.3)
    assert tree.n == 2
    assert tree.nodes[tree.root].size == 2
    assert sorted(tree.points_of(tree.root).tolist()) == [0, 1]
