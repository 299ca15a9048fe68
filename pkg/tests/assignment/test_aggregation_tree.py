import math

import numpy as np
import pytest

from civd.assignment import build_aggregation_tree


def test_single_point():
    tree = build_aggregation_tree([[1.0, 2.0]])
    assert len(tree.nodes) == 1
    assert tree.nodes[0].S == 0.0
    assert tree.nodes[0].children == {}


def test_two_points():
    tree = build_aggregation_tree([[0.0, 0.0], [1.0, 3.0]])
    assert len(tree.nodes) == 3
    assert sorted(tree.nodes[0].children) == [1, 4]


def test_nodes_shrink_to_their_points(rng):
    points = rng.uniform(0, 1, size=(300, 2))
    tree = build_aggregation_tree(points)
    assert len(tree.nodes) <= 2 * len(points) - 1
    for node in tree.nodes:
        members = points[tree.points_of(node.id)]
        assert len(members) == node.size
        assert node.S == pytest.approx(np.max(members.max(axis=0) - members.min(axis=0)), abs=1e-15)
        assert np.all(members >= tree.region_lo[node.id] - 1e-12)
        assert np.all(members <= tree.region_hi[node.id] + 1e-12)
        if node.children:
            assert len(node.children) >= 2
            parts = [set(tree.points_of(child).tolist()) for child in node.children.values()]
            assert set().union(*parts) == set(tree.points_of(node.id).tolist())
            assert sum(map(len, parts)) == node.size
        else:
            assert node.size == 1


def test_ipath_index(rng):
    tree = build_aggregation_tree(rng.uniform(0, 1, size=(100, 2)))
    for node in tree.nodes:
        for label in range(1, 5):
            path_id, position = tree.ipath_ref[node.id, label - 1]
            assert tree.ipaths[label][path_id][position] == node.id


def test_majority_paths_partition_nodes(rng):
    tree = build_aggregation_tree(rng.uniform(0, 1, size=(100, 3)))
    seen = [node for path in tree.majority_paths for node in path.nodes]
    assert sorted(seen) == list(range(len(tree.nodes)))
    for path in tree.majority_paths:
        for parent, child in zip(path.nodes, path.nodes[1:]):
            assert tree.nodes[child].parent == parent


def _ancestors(tree, node_id):
    chain = []
    while node_id >= 0:
        chain.append(node_id)
        node_id = tree.nodes[node_id].parent
    return chain[::-1]


def test_find_tail_matches_linear_scan(rng):
    for n in (20, 200, 1000):
        tree = build_aggregation_tree(rng.uniform(0, 1, size=(n, 2)))
        for _ in range(100):
            target = int(rng.integers(len(tree.nodes)))
            chain = _ancestors(tree, target)
            members = set(chain)
            start = chain[int(rng.integers(len(chain)))]
            inspected = []

            def in_z(node_id):
                inspected.append(node_id)
                return node_id in members

            assert tree.find_tail(start, in_z) == target
            assert len(inspected) <= 10 * math.log2(n) + 10


def test_find_tail_on_own_node():
    tree = build_aggregation_tree([[0.0], [1.0], [3.0]])
    leaf = int(tree.leaf_of_point[2])
    assert tree.find_tail(leaf, lambda node_id: node_id == leaf or node_id == tree.root) == leaf


@pytest.mark.parametrize("dim", [1, 2])
def test_points_one_ulp_apart(dim):
    near = np.nextafter(1.0, 2.0)
    points = np.array([[1.0] * dim, [near] + [1.0] * (dim - 1)])
    tree = build_aggregation_tree(points)
    assert len(tree.nodes) == 3
    leaves = [node for node in tree.nodes if not node.children]
    assert sorted(int(tree.leaf_order[leaf.start]) for leaf in leaves) == [0, 1]
