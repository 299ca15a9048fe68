"""Scalar helpers of the error calculus."""
from __future__ import annotations

import math
from collections.abc import Callable

BISECTION_TOLERANCE = 1e-12


def gamma_half_integer(twice_x: int) -> float:
    """Γ(twice_x / 2) for a positive integer twice_x, by the integer / half-integer recurrence."""
    if twice_x < 1:
        msg = f"Γ is only tabulated for positive half-integers, got {twice_x}/2"
        raise ValueError(msg)
    value = 1.0 if twice_x % 2 == 0 else math.sqrt(math.pi)
    k = 2 if twice_x % 2 == 0 else 1
    while k < twice_x:
        # Γ(x + 1) = x Γ(x)
        value *= k / 2
        k += 2
    return value


def ball_volume_constant(dim: int) -> float:
    """c_d = Γ(d/2 + 1) / π^(d/2), i.e. the inverse volume of the unit d-ball."""
    if dim < 1:
        msg = f"Dimension must be positive, got {dim}"
        raise ValueError(msg)
    return gamma_half_integer(dim + 2) / math.pi ** (dim / 2)


def bisect_increasing(
    func: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    tol: float = BISECTION_TOLERANCE,
) -> float:
    """Solve func(x) = target for an increasing func on [lo, hi]."""
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if func(mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
