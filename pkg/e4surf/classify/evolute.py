"""Offsets that turn a normal transport into an evolute"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from e4surf.errors import MetricConditionError
from e4surf.frame.frame import FrameFunction
from e4surf.invariants.invariants import invariant_report
from e4surf.patch.patch import SurfacePatch

_logger: logging.Logger = logging.getLogger(__name__)

METRIC_TOL = 1e-8
VALIDATION_TOL = 1e-8
RANK_TOL = 1e-9


@dataclass(frozen=True)
class EvoluteSolution:
    f1: float
    f2: float
    # rank of the full three-equation system is below 2, (f1, f2) is its minimum-norm solution
    degenerate: bool
    off_diagonal_residual: float
    mean_curvature_residual: float


@dataclass(frozen=True)
class NoSolution:
    u: float
    v: float
    reason: str


EvoluteResult = Union[EvoluteSolution, NoSolution]


def _rank(matrix: np.ndarray) -> int:
    return int(np.linalg.matrix_rank(matrix, tol=RANK_TOL * max(1.0, float(np.max(np.abs(matrix))))))


def solve_evolute_offsets(
    base: SurfacePatch, u: float, v: float, frame: Optional[FrameFunction] = None
) -> EvoluteResult:
    """Solves f1 c_1^11 + f2 c_2^11 = 1, f1 c_1^22 + f2 c_2^22 = 1, f1 c_1^12 + f2 c_2^12 = 0

    The first two equations are solved as a square system; the third one and the condition
    f1 H1 + f2 H2 = 1 are then checked. A singular but consistent square system falls back on
    the minimum-norm least-squares solution of all three equations.

    Args:
        base (SurfacePatch): Patch with g12 = 0 at (u, v)
        u (float): u parameter
        v (float): v parameter
        frame (FrameFunction): Normal frame, the patch frame by default

    Returns:
        EvoluteSolution | NoSolution: Offsets, or why there are none
    """
    report = invariant_report(base, u, v, frame)
    m = report.metric
    if abs(m.g12) > METRIC_TOL * max(1.0, math.sqrt(m.g11 * m.g22)):
        raise MetricConditionError(f"evolute offsets need g12 = 0, got {m.g12:.3e} at (u={u:.6g}, v={v:.6g})")
    w = report.weingarten.w
    square = np.array([[w[0, 0, 0], w[1, 0, 0]], [w[0, 1, 1], w[1, 1, 1]]])
    full = np.vstack([square, [w[0, 0, 1], w[1, 0, 1]]])
    rhs = np.array([1.0, 1.0])
    degenerate = False
    if _rank(square) == 2:
        f = np.linalg.solve(square, rhs)
    elif _rank(np.column_stack([square, rhs])) > _rank(square):
        return NoSolution(u, v, "the diagonal equations are inconsistent")
    else:
        f = np.linalg.lstsq(full, np.array([1.0, 1.0, 0.0]), rcond=None)[0]
        degenerate = _rank(full) < 2
    off_diagonal = abs(float(full[2] @ f))
    if off_diagonal > VALIDATION_TOL:
        return NoSolution(u, v, f"off-diagonal equation fails by {off_diagonal:.3e}")
    c = report.curvature
    condition = abs(f[0] * c.H1 + f[1] * c.H2 - 1.0)
    if condition > VALIDATION_TOL:
        return NoSolution(u, v, f"f1 H1 + f2 H2 = 1 fails by {condition:.3e}")
    return EvoluteSolution(float(f[0]), float(f[1]), degenerate, off_diagonal, float(condition))
