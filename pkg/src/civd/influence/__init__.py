"""Influence functions and their error calculus."""
from civd.utils.exceptions import InvalidConfigurationError

from .calculus import ball_volume_constant, gamma_half_integer
from .density import DensityInfluence
from .evaluation import InfluenceValue, WeightedSite, eval_density, eval_vector
from .influence_model import InfluenceModel, ModelKind, perturb_sites
from .vector import VectorInfluence


def make_model(
    model: str | ModelKind,
    dim: int,
    epsilon: float,
    t: float = 2.0,
    beta: float | None = None,
    locality_constant: float = 1.0,
) -> InfluenceModel:
    """Instantiate the influence model named by `model`."""
    try:
        kind = ModelKind(str(model))
    except ValueError as error:
        msg = f"Unknown influence model `{model}`, expected one of {[str(k) for k in ModelKind]}"
        raise InvalidConfigurationError(msg) from error
    if kind is ModelKind.VECTOR:
        return VectorInfluence(dim, epsilon, t=t, beta=beta, locality_constant=locality_constant)
    return DensityInfluence(dim, epsilon, beta=beta)


__all__ = [
    "DensityInfluence",
    "InfluenceModel",
    "InfluenceValue",
    "ModelKind",
    "VectorInfluence",
    "WeightedSite",
    "ball_volume_constant",
    "eval_density",
    "eval_vector",
    "gamma_half_integer",
    "make_model",
    "perturb_sites",
]
