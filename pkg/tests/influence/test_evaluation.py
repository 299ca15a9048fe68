import math

import numpy as np
import pytest

from civd.influence import DensityInfluence, VectorInfluence, WeightedSite, eval_density, eval_vector, perturb_sites
from civd.utils.exceptions import DimensionMismatchError, SingularQueryError


def test_single_vector_site():
    value = eval_vector([WeightedSite(np.array([2.0, 0.0]))], np.zeros(2), t=2)
    assert value.magnitude == pytest.approx(0.25)
    assert np.allclose(value.direction, [1.0, 0.0])


def test_antipodal_vector_sites_cancel():
    sites = [WeightedSite(np.array([1.0, 0.0])), WeightedSite(np.array([-1.0, 0.0]))]
    value = eval_vector(sites, np.zeros(2), t=2)
    assert value.magnitude == pytest.approx(0.0)


def test_multiplicity_scales_force():
    single = eval_vector([WeightedSite(np.array([0.0, 3.0]))], np.zeros(2), t=1).magnitude
    triple = eval_vector([WeightedSite(np.array([0.0, 3.0]), 3)], np.zeros(2), t=1).magnitude
    assert triple == pytest.approx(3 * single)


def test_density_value():
    sites = [WeightedSite(np.array([1.0, 0.0])), WeightedSite(np.array([0.0, 2.0]))]
    assert eval_density(sites, np.zeros(2), dim=2).magnitude == pytest.approx(1 / (2 * math.pi))


def test_singular_query():
    with pytest.raises(SingularQueryError) as excinfo:
        eval_vector([WeightedSite(np.array([1.0, 1.0]))], np.array([1.0, 1.0]), t=2)
    assert "coincides" in str(excinfo.value)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        eval_density([WeightedSite(np.array([1.0, 1.0]))], np.array([1.0, 1.0, 0.0]), dim=2)


def test_similarity_invariance(rng):
    vector = VectorInfluence(2, 0.2, t=2)
    density = DensityInfluence(2, 0.2)
    for _ in range(20):
        points = rng.uniform(-1, 1, size=(6, 2))
        query = rng.uniform(2, 3, size=2)
        scale = rng.uniform(0.5, 4)
        shift = rng.uniform(-5, 5, size=2)
        moved_points, moved_query = points * scale + shift, query * scale + shift
        assert vector.influence(moved_points, moved_query) == pytest.approx(
            vector.influence(points, query) * scale**-2, rel=1e-9,
        )
        assert density.influence(moved_points, moved_query) == pytest.approx(
            density.influence(points, query) * scale**-2, rel=1e-9,
        )


def test_density_stability_envelope(rng):
    model = DensityInfluence(2, 0.2)
    for _ in range(10_000 // 50):
        points = rng.uniform(-1, 1, size=(5, 2))
        query = rng.uniform(-3, 3, size=2)
        if np.linalg.norm(points - query, axis=1).min() < 1e-3:
            continue
        sites = [WeightedSite(point) for point in points]
        original = model.evaluate(sites, query).magnitude
        for epsilon in rng.uniform(0, 0.3, size=50):
            moved = model.evaluate(perturb_sites(sites, query, epsilon, rng), query).magnitude
            assert (1 + epsilon) ** -2 * original * (1 - 1e-9) <= moved <= (1 - epsilon) ** -2 * original * (1 + 1e-9)


def test_perturbation_stays_within_reach(rng):
    query = np.zeros(3)
    sites = [WeightedSite(rng.uniform(1, 2, size=3), 2) for _ in range(10)]
    for site, moved in zip(sites, perturb_sites(sites, query, 0.1, rng)):
        assert np.linalg.norm(moved.location - site.location) <= 0.1 * np.linalg.norm(site.location) + 1e-12
        assert moved.multiplicity == 2
