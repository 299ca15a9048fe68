"""Base class shared by the influence models."""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections.abc import Sequence
from enum import Enum
from functools import cached_property

import numpy as np
import numpy.typing as npt
from loguru import logger

from civd.geometry import Point, PointArray
from civd.influence.calculus import bisect_increasing
from civd.influence.evaluation import InfluenceValue, WeightedSite, unit_vector
from civd.utils.exceptions import InvalidConfigurationError, NoSolutionError


class ModelKind(Enum):
    VECTOR = "vector"
    DENSITY = "density"

    def __str__(self) -> str:
        return self.value


class InfluenceModel(ABC):
    """An influence function together with its error calculus.

    The perturbation bound δ is model specific, everything derived from it (Δ, its inverse, the tolerance β used
    by the decomposition) is computed here. Instances are immutable once built.
    """

    kind: ModelKind

    def __init__(self, dim: int, epsilon: float, beta: float | None = None) -> None:
        if dim < 1:
            msg = f"Dimension must be positive, got {dim}"
            raise InvalidConfigurationError(msg)
        if not 0 < epsilon < 1:
            msg = f"epsilon must be in (0, 1), got {epsilon}"
            raise InvalidConfigurationError(msg)
        self.dim = dim
        self.epsilon = epsilon
        self.delta_inv = self.delta_capital_inverse(epsilon)
        derived = self.derive_beta(self.delta_inv)
        if beta is None:
            beta = derived
        elif not 0 < beta < 0.5:
            msg = f"beta must be in (0, 1/2), got {beta}"
            raise InvalidConfigurationError(msg)
        elif beta > derived:
            logger.warning(f"beta={beta} exceeds the value {derived:.6g} guaranteeing a (1-{epsilon}) approximation")
        self.beta = beta

    # Error calculus

    @abstractmethod
    def delta(self, x: float) -> float:
        """Relative influence change under an x-perturbation."""

    @abstractmethod
    def derive_beta(self, delta_inv: float) -> float:
        """Decomposition tolerance guaranteeing the target error."""

    @abstractmethod
    def domination_poly(self, n: int) -> float:
        """𝒫(n): distance ratio beyond which one node dominates the rest."""

    def _check_domain(self, x: float) -> None:
        if not 0 <= x < 1:
            msg = f"{x} is outside the domain [0, 1) of the error calculus"
            raise ValueError(msg)

    def delta_capital(self, x: float) -> float:
        """Δ(x) = 1 − (1 − δ(x))(1 − x)(1 − δ(x / (1 − x)))."""
        self._check_domain(x)
        return 1 - (1 - self.delta(x)) * (1 - x) * (1 - self.delta(x / (1 - x)))

    @cached_property
    def domain_limit(self) -> float:
        """Supremum of x where both δ(x) and δ(x / (1 − x)) stay below 1."""
        if self.delta(1 - 1e-15) < 1:
            y_star = 1.0
        else:
            y_star = bisect_increasing(self.delta, 1.0, 0.0, 1 - 1e-15)
        return y_star / (1 + y_star)

    def delta_capital_inverse(self, epsilon: float) -> float:
        """Δ⁻¹ by bisection on the increasing branch starting at 0."""
        if not 0 < epsilon < 1:
            msg = f"epsilon must be in (0, 1), got {epsilon}"
            raise NoSolutionError(msg)
        upper = self.domain_limit * (1 - 1e-12)
        if self.delta_capital(upper) < epsilon:
            msg = f"epsilon={epsilon} cannot be reached within the domain of the error calculus"
            raise NoSolutionError(msg)
        solution = bisect_increasing(self.delta_capital, epsilon, 0.0, upper)
        if solution >= 0.5:
            msg = f"Δ⁻¹({epsilon}) = {solution} is not below 1/2"
            raise NoSolutionError(msg)
        return solution

    def max_epsilon(self) -> float:
        """Largest epsilon whose Δ⁻¹ stays below 1/2."""
        if self.domain_limit <= 0.5:
            return 1.0
        return self.delta_capital(0.5)

    # Evaluation

    @abstractmethod
    def evaluate_arrays(
        self,
        locations: PointArray,
        multiplicities: npt.ArrayLike,
        query: Point,
    ) -> InfluenceValue:
        """Influence of the weighted multiset on query."""

    def evaluate(self, sites: Sequence[WeightedSite], query: Point) -> InfluenceValue:
        locations = np.array([site.location for site in sites], dtype=float)
        multiplicities = np.array([site.multiplicity for site in sites], dtype=float)
        return self.evaluate_arrays(locations, multiplicities, query)

    def influence(self, points: PointArray, query: Point) -> float:
        """Magnitude of the influence of a plain point cluster."""
        return self.evaluate_arrays(points, np.ones(len(points)), query).magnitude

    @staticmethod
    def select(sites: Sequence[WeightedSite]) -> list[WeightedSite]:
        """Selection mapping η; coincident points never weaken either model, so it is the identity."""
        return list(sites)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(dim={self.dim}, epsilon={self.epsilon}, beta={self.beta:.6g})"


def perturb_sites(
    sites: Sequence[WeightedSite],
    query: Point,
    epsilon: float,
    rng: np.random.Generator,
) -> list[WeightedSite]:
    """Random epsilon-perturbation with witness query: each site moves by at most epsilon·‖L − q‖."""
    query = np.asarray(query, dtype=float)
    perturbed = []
    for site in sites:
        reach = epsilon * math.dist(site.location, query)
        shift = unit_vector(rng, query.size) * rng.uniform(0, reach)
        perturbed.append(WeightedSite(np.asarray(site.location) + shift, site.multiplicity))
    return perturbed
