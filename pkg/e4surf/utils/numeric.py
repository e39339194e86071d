"""Finite-difference stencils"""

from typing import Callable, Tuple

import numpy as np

from e4surf.errors import OutOfDomainError

Stencil = Tuple[Tuple[float, ...], Tuple[float, ...]]


def first_derivative_stencil(t: float, h: float, lo: float, hi: float) -> Stencil:
    """Offsets and weights of a second-order first-derivative stencil inside [lo, hi]

    Central where it fits, one-sided (-3, 4, -1)/2h towards the interior otherwise.

    Args:
        t (float): Evaluation point
        h (float): Step
        lo (float): Lower bound of the parameter range
        hi (float): Upper bound of the parameter range

    Returns:
        tuple: Offsets and weights
    """
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    eps = 1e-12 * (1.0 + abs(lo) + abs(hi))
    if t - h >= lo - eps and t + h <= hi + eps:
        return (-h, h), (-0.5 / h, 0.5 / h)
    if t + 2 * h <= hi + eps:
        return (0.0, h, 2 * h), (-1.5 / h, 2.0 / h, -0.5 / h)
    if t - 2 * h >= lo - eps:
        return (0.0, -h, -2 * h), (1.5 / h, -2.0 / h, 0.5 / h)
    raise OutOfDomainError(f"no stencil of step {h} fits in [{lo}, {hi}] around {t}")


def derivative(fn: Callable[[float], np.ndarray], t: float, h: float, lo: float, hi: float) -> np.ndarray:
    """First derivative of a vector-valued function of one variable

    Args:
        fn (Callable): Function to differentiate
        t (float): Evaluation point
        h (float): Step
        lo (float): Lower bound
        hi (float): Upper bound

    Returns:
        np.ndarray: Derivative estimate
    """
    offsets, weights = first_derivative_stencil(t, h, lo, hi)
    total = None
    for offset, weight in zip(offsets, weights):
        term = weight * np.asarray(fn(t + offset), dtype=float)
        total = term if total is None else total + term
    return np.asarray(total)
