"""Density influence: cluster size over the volume of the enclosing query-centered ball."""
from __future__ import annotations

import numpy.typing as npt

from civd import TOLERANCE
from civd.geometry import Point, PointArray
from civd.influence.evaluation import InfluenceValue, density_influence
from civd.influence.influence_model import InfluenceModel, ModelKind
from civd.utils.exceptions import InvalidConfigurationError


class DensityInfluence(InfluenceModel):
    kind = ModelKind.DENSITY

    def delta(self, x: float) -> float:
        self._check_domain(x)
        return max(1 - (1 + x) ** -self.dim, (1 - x) ** -self.dim - 1)

    def derive_beta(self, delta_inv: float) -> float:
        beta = min(delta_inv / 3, (1 - delta_inv) ** (-1 / self.dim) - 1)
        if 1 - (1 + beta) ** -self.dim > delta_inv + TOLERANCE or beta > delta_inv / 3 + TOLERANCE:
            msg = f"beta={beta} violates the density tolerance conditions for Δ⁻¹={delta_inv}"
            raise InvalidConfigurationError(msg)
        return beta

    def domination_poly(self, n: int) -> float:
        return n ** (1 / self.dim)

    def evaluate_arrays(self, locations: PointArray, multiplicities: npt.ArrayLike, query: Point) -> InfluenceValue:
        return density_influence(locations, multiplicities, query, self.dim)
