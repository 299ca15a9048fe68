"""Force-like vector influence."""
from __future__ import annotations

import numpy.typing as npt

from civd.geometry import Point, PointArray
from civd.influence.evaluation import InfluenceValue, vector_influence
from civd.influence.influence_model import InfluenceModel, ModelKind
from civd.utils.exceptions import InvalidConfigurationError


class VectorInfluence(InfluenceModel):
    """Each point pulls q with strength ‖p − q‖^(−t); a cluster's influence is the norm of the summed pull."""

    kind = ModelKind.VECTOR

    def __init__(
        self,
        dim: int,
        epsilon: float,
        t: float = 2.0,
        beta: float | None = None,
        locality_constant: float = 1.0,
    ) -> None:
        if t < 1:
            msg = f"The force exponent t must be at least 1, got {t}"
            raise InvalidConfigurationError(msg)
        if locality_constant <= 0:
            msg = f"locality_constant must be positive, got {locality_constant}"
            raise InvalidConfigurationError(msg)
        self.t = t
        self.locality_constant = locality_constant
        super().__init__(dim, epsilon, beta)

    def delta(self, x: float) -> float:
        self._check_domain(x)
        return self.locality_constant * 2 * self.dim * (1 - (1 - x) ** self.t)

    def derive_beta(self, delta_inv: float) -> float:
        return delta_inv

    def domination_poly(self, n: int) -> float:
        return n ** (1 / self.t)

    def evaluate_arrays(self, locations: PointArray, multiplicities: npt.ArrayLike, query: Point) -> InfluenceValue:
        return vector_influence(locations, multiplicities, query, self.t)

    def __repr__(self) -> str:
        return f"VectorInfluence(dim={self.dim}, epsilon={self.epsilon}, t={self.t}, beta={self.beta:.6g})"
