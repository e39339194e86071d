"""Torsion-free normal frames on surfaces with flat normal bundle"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import RectBivariateSpline

from e4surf.errors import FlatnessError
from e4surf.frame.frame import FRAME_FD_STEP, FrameFunction, NormalFrame, frame_function
from e4surf.invariants.invariants import invariant_report
from e4surf.patch.patch import SurfacePatch
from e4surf.utils.grid import GridSpec

_logger: logging.Logger = logging.getLogger(__name__)

FLATNESS_TOL = 1e-6


class RotatedFrame:
    """Base frame rotated in the normal plane by a smooth angle field theta(u, v)"""

    def __init__(self, base: FrameFunction, grid: GridSpec, theta: np.ndarray) -> None:
        self.base = base
        self.grid = grid
        kx, ky = min(3, grid.nu - 1), min(3, grid.nv - 1)
        self._spline = RectBivariateSpline(grid.u_values, grid.v_values, theta, kx=kx, ky=ky)

    def theta(self, u: float, v: float) -> float:
        return float(self._spline(u, v, grid=False))

    def __call__(self, u: float, v: float) -> NormalFrame:
        return self.base(u, v).rotated(self.theta(u, v))


@dataclass(frozen=True, eq=False)
class ParallelFrameField:
    grid: GridSpec
    theta: np.ndarray
    t1: np.ndarray
    t2: np.ndarray
    max_kn: float
    frame: RotatedFrame

    def frame_at(self, i: int, j: int) -> NormalFrame:
        return self.frame(float(self.grid.u_values[i]), float(self.grid.v_values[j]))


def integrate_rotation(t1: np.ndarray, t2: np.ndarray, du: float, dv: float) -> np.ndarray:
    """Integrates d theta = -(T1 du + T2 dv) with the trapezoidal rule, first along u then along v

    Args:
        t1 (np.ndarray): T_1^12 at the nodes, shape (nu, nv)
        t2 (np.ndarray): T_2^12 at the nodes, shape (nu, nv)
        du (float): u spacing
        dv (float): v spacing

    Returns:
        np.ndarray: theta at the nodes with theta[0, 0] = 0
    """
    theta = np.zeros_like(t1)
    theta[1:, 0] = -np.cumsum(0.5 * (t1[1:, 0] + t1[:-1, 0]) * du)
    theta[:, 1:] = theta[:, :1] - np.cumsum(0.5 * (t2[:, 1:] + t2[:, :-1]) * dv, axis=1)
    return theta


def parallelize_frame(
    s: SurfacePatch,
    grid: GridSpec,
    frame: Optional[FrameFunction] = None,
    tol: float = FLATNESS_TOL,
    h: float = FRAME_FD_STEP,
) -> ParallelFrameField:
    """Rotates the normal frame into a torsion-free one over the grid

    Args:
        s (SurfacePatch): Patch with flat normal bundle over the grid
        grid (GridSpec): Grid
        frame (FrameFunction): Continuous base frame, the patch frame by default
        tol (float): Largest |K_N| accepted as flat
        h (float): Frame derivative step

    Returns:
        ParallelFrameField: Angle field and the rotated frame
    """
    frame = frame or frame_function(s)
    box = grid.box
    t1 = np.zeros((grid.nu, grid.nv))
    t2 = np.zeros((grid.nu, grid.nv))
    max_kn, worst = 0.0, (grid.u_range[0], grid.v_range[0])
    for i, j, u, v in grid.nodes():
        report = invariant_report(s, u, v, frame, with_torsion=True, h=h, domain=box)
        kn = abs(report.curvature.KN)
        if kn > max_kn:
            max_kn, worst = kn, (u, v)
        assert report.torsion is not None
        t1[i, j] = report.torsion.t1
        t2[i, j] = report.torsion.t2
    if max_kn > tol:
        raise FlatnessError(max_kn, worst, tol)
    theta = integrate_rotation(t1, t2, grid.du, grid.dv)
    _logger.debug("Parallelized frame of %s: theta in [%.6g, %.6g]", s.name, theta.min(), theta.max())
    return ParallelFrameField(grid, theta, t1, t2, max_kn, RotatedFrame(frame, grid, theta))
