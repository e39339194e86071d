"""Parallel, evolute and parallel-mean-curvature classification over grids"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from e4surf.frame.frame import FRAME_FD_STEP, FrameFunction, frame_function
from e4surf.invariants.invariants import invariant_report, torsion_at
from e4surf.patch.patch import SurfacePatch
from e4surf.transport.offsets import OffsetField
from e4surf.transport.transport import transport_surface
from e4surf.utils.grid import GridSpec
from e4surf.utils.numeric import derivative

_logger: logging.Logger = logging.getLogger(__name__)

MAX_REPORTED_NODES = 100
METRIC_TOL = 1e-8


@dataclass
class NodeResiduals:
    u: float
    v: float
    residuals: Dict[str, float]


@dataclass
class ClassificationReport:
    """Named residuals per node and per scenario; pass iff every residual is within its tolerance"""

    scenario: str
    surface: Dict[str, Any]
    grid: Optional[GridSpec]
    tolerances: Dict[str, float]
    nodes: List[NodeResiduals] = field(default_factory=list)
    checks: Dict[str, float] = field(default_factory=dict)
    statistics: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)

    def add_node(self, u: float, v: float, **residuals: float) -> None:
        self.nodes.append(NodeResiduals(u, v, {k: float(r) for k, r in residuals.items()}))

    def _all_values(self) -> List[float]:
        values = [r for node in self.nodes for r in node.residuals.values()]
        return values + list(self.checks.values())

    def _excess(self, residuals: Dict[str, float]) -> float:
        return max((r - self.tolerances[name] for name, r in residuals.items()), default=-math.inf)

    @property
    def residual_max(self) -> float:
        return max(self._all_values(), default=0.0)

    @property
    def residual_mean(self) -> float:
        values = self._all_values()
        return float(np.mean(values)) if values else 0.0

    def residual_max_of(self, name: str) -> float:
        values = [node.residuals[name] for node in self.nodes if name in node.residuals]
        if name in self.checks:
            values.append(self.checks[name])
        return max(values, default=0.0)

    @property
    def failed_nodes(self) -> List[NodeResiduals]:
        failed = [node for node in self.nodes if self._excess(node.residuals) > 0]
        return sorted(failed, key=lambda node: -self._excess(node.residuals))

    @property
    def failed_checks(self) -> List[str]:
        return [name for name, value in self.checks.items() if value > self.tolerances[name]]

    @property
    def passed(self) -> bool:
        return not self.failed_checks and not any(self._excess(node.residuals) > 0 for node in self.nodes)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": self.scenario,
            "surface": self.surface,
            "grid": self.grid.to_dict() if self.grid else None,
            "tolerances": dict(self.tolerances),
            "residual_max": self.residual_max,
            "residual_mean": self.residual_mean,
            "verdict": self.verdict,
            "checks": dict(self.checks),
            "failed_checks": self.failed_checks,
            "statistics": self.statistics,
            "metadata": self.metadata,
            "flags": list(self.flags),
            "nodes_failed": [
                {"u": node.u, "v": node.v, "residuals": node.residuals}
                for node in self.failed_nodes[:MAX_REPORTED_NODES]
            ],
        }


def _report(
    scenario: str, base: SurfacePatch, grid: GridSpec, names: Tuple[str, ...], tol: float
) -> ClassificationReport:
    return ClassificationReport(scenario, base.describe(), grid, {name: tol for name in names})


def check_parallel(
    base: SurfacePatch,
    off: OffsetField,
    grid: GridSpec,
    tol: float = 1e-6,
    frame: Optional[FrameFunction] = None,
    h: float = FRAME_FD_STEP,
) -> ClassificationReport:
    """Checks the parallel-surface system against the given frame

    Residuals per node: |(f1)_u - f2 T1|, |(f1)_v - f2 T2|, |(f2)_u + f1 T1|, |(f2)_v + f1 T2|.
    The statistic `squared_sum_deviation` is max |f1^2 + f2^2 - mean| over the grid.

    Args:
        base (SurfacePatch): Base surface
        off (OffsetField): Offsets
        grid (GridSpec): Grid
        tol (float): Tolerance
        frame (FrameFunction): Normal frame, the patch frame by default
        h (float): Frame derivative step

    Returns:
        ClassificationReport: Report
    """
    frame = frame or frame_function(base)
    report = _report("parallel", base, grid, ("f1_u", "f1_v", "f2_u", "f2_v"), tol)
    report.metadata["offsets"] = off.describe()
    squared = []
    for _, _, u, v in grid.nodes():
        t = torsion_at(base, u, v, h, frame, grid.box)
        f, df = off.values(u, v), off.derivatives(u, v)
        report.add_node(
            u,
            v,
            f1_u=abs(df[0, 0] - f[1] * t.t1),
            f1_v=abs(df[0, 1] - f[1] * t.t2),
            f2_u=abs(df[1, 0] + f[0] * t.t1),
            f2_v=abs(df[1, 1] + f[0] * t.t2),
        )
        squared.append(float(f @ f))
    sums = np.array(squared)
    report.statistics["squared_sum_mean"] = float(sums.mean())
    report.statistics["squared_sum_deviation"] = float(np.max(np.abs(sums - sums.mean())))
    _logger.debug("check_parallel on %s: %s", base.name, report.verdict)
    return report


def check_evolute(
    base: SurfacePatch,
    off: OffsetField,
    grid: GridSpec,
    tol: float = 1e-5,
    frame: Optional[FrameFunction] = None,
) -> ClassificationReport:
    """Checks that the transport tangents are orthogonal to the base tangents

    Residuals per node: |<x~_{u^i}, x_{u^j}>| with direct finite-difference tangents. Where g12
    vanishes the statistic `mean_curvature_condition` records max |f1 H1 + f2 H2 - 1|.

    Args:
        base (SurfacePatch): Base surface
        off (OffsetField): Offsets
        grid (GridSpec): Grid
        tol (float): Tolerance
        frame (FrameFunction): Normal frame, the patch frame by default

    Returns:
        ClassificationReport: Report
    """
    frame = frame or frame_function(base)
    ts = transport_surface(base, off, frame)
    report = _report("evolute", base, grid, ("uu", "uv", "vu", "vv"), tol)
    report.metadata["offsets"] = off.describe()
    condition: List[float] = []
    for _, _, u, v in grid.nodes():
        xtu, xtv = ts.tangents(u, v)
        inv = invariant_report(base, u, v, frame)
        j = inv.jet
        report.add_node(
            u, v, uu=abs(xtu @ j.xu), uv=abs(xtu @ j.xv), vu=abs(xtv @ j.xu), vv=abs(xtv @ j.xv)
        )
        m = inv.metric
        if abs(m.g12) <= METRIC_TOL * max(1.0, math.sqrt(m.g11 * m.g22)):
            f = off.values(u, v)
            c = inv.curvature
            condition.append(abs(f[0] * c.H1 + f[1] * c.H2 - 1.0))
    if condition:
        report.statistics["mean_curvature_condition"] = float(max(condition))
    _logger.debug("check_evolute on %s: %s", base.name, report.verdict)
    return report


def check_H_parallel(  # noqa: N802
    base: SurfacePatch,
    grid: GridSpec,
    tol: float = 1e-6,
    frame: Optional[FrameFunction] = None,
    h: float = FRAME_FD_STEP,
) -> ClassificationReport:
    """Checks that the mean curvature vector is parallel in the normal bundle

    Residuals per node: |(H1)_{u^i} - H2 T_i| and |(H2)_{u^i} + H1 T_i|. Statistics: the largest
    deviation of H1^2 + H2^2 from its grid mean and the largest |H|. Flagged `minimal` when H vanishes.

    Args:
        base (SurfacePatch): Base surface
        grid (GridSpec): Grid
        tol (float): Tolerance
        frame (FrameFunction): Normal frame, the patch frame by default
        h (float): Step for the frame and mean curvature derivatives

    Returns:
        ClassificationReport: Report
    """
    frame = frame or frame_function(base)
    box = grid.box
    report = _report("hparallel", base, grid, ("h1_u", "h1_v", "h2_u", "h2_v"), tol)

    def _h(u: float, v: float) -> np.ndarray:
        c = invariant_report(base, u, v, frame).curvature
        return np.array([c.H1, c.H2])

    norms = []
    for _, _, u, v in grid.nodes():
        hv = _h(u, v)
        h_u = derivative(lambda t: _h(t, v), u, h, box.u_min, box.u_max)
        h_v = derivative(lambda t: _h(u, t), v, h, box.v_min, box.v_max)
        t = torsion_at(base, u, v, h, frame, box)
        report.add_node(
            u,
            v,
            h1_u=abs(h_u[0] - hv[1] * t.t1),
            h1_v=abs(h_v[0] - hv[1] * t.t2),
            h2_u=abs(h_u[1] + hv[0] * t.t1),
            h2_v=abs(h_v[1] + hv[0] * t.t2),
        )
        norms.append(float(hv @ hv))
    squared = np.array(norms)
    report.statistics["h_squared_mean"] = float(squared.mean())
    report.statistics["h_squared_deviation"] = float(np.max(np.abs(squared - squared.mean())))
    report.statistics["h_norm_max"] = float(math.sqrt(squared.max()))
    if report.statistics["h_norm_max"] <= tol:
        report.flags.append("minimal")
    return report


CHEN_VERDICTS = ("minimal-in-hypersphere", "flat-normal-bundle", "not-H-parallel", "H-zero", "counterexample")


@dataclass
class ChenResult:
    verdict: str
    hypersphere: bool
    flat_normal_bundle: bool
    center: Optional[List[float]]
    radius: Optional[float]
    sphere_deviation: Optional[float]
    max_kn: Optional[float]
    worst_node: Optional[Tuple[float, float]]
    h_parallel: ClassificationReport

    @property
    def passed(self) -> bool:
        return self.verdict != "counterexample"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": "chen",
            "surface": self.h_parallel.surface,
            "grid": self.h_parallel.grid.to_dict() if self.h_parallel.grid else None,
            "verdict": self.verdict,
            "hypersphere": self.hypersphere,
            "flat_normal_bundle": self.flat_normal_bundle,
            "center": self.center,
            "radius": self.radius,
            "sphere_deviation": self.sphere_deviation,
            "max_kn": self.max_kn,
            "worst_node": list(self.worst_node) if self.worst_node else None,
            "h_parallel": self.h_parallel.to_dict(),
        }


def fit_hypersphere(points: np.ndarray) -> Tuple[np.ndarray, float, float]:
    """Least-squares hypersphere |x - c|^2 = R^2 through the points

    Args:
        points (np.ndarray): Points, one per row

    Returns:
        tuple: Center, radius and the relative standard deviation of |x - c|^2
    """
    design = np.column_stack([2 * points, np.ones(len(points))])
    target = np.sum(points * points, axis=1)
    solution = np.linalg.lstsq(design, target, rcond=None)[0]
    center = solution[:-1]
    squared = np.sum((points - center) ** 2, axis=1)
    mean = float(squared.mean())
    if mean <= 0:
        return center, 0.0, math.inf
    return center, math.sqrt(mean), float(squared.std() / mean)


def chen_dichotomy(
    base: SurfacePatch, grid: GridSpec, tol: float = 1e-6, frame: Optional[FrameFunction] = None
) -> ChenResult:
    """Surfaces with parallel non-zero mean curvature vector: minimal in a hypersphere, or flat normal bundle

    Args:
        base (SurfacePatch): Base surface
        grid (GridSpec): Grid
        tol (float): Tolerance of every sub-check
        frame (FrameFunction): Normal frame, the patch frame by default

    Returns:
        ChenResult: Verdict and the evidence for it
    """
    frame = frame or frame_function(base)
    hp = check_H_parallel(base, grid, tol, frame)
    if not hp.passed:
        return ChenResult("not-H-parallel", False, False, None, None, None, None, None, hp)
    if "minimal" in hp.flags:
        return ChenResult("H-zero", False, False, None, None, None, None, None, hp)
    points, kns, nodes = [], [], []
    for _, _, u, v in grid.nodes():
        inv = invariant_report(base, u, v, frame)
        points.append(inv.jet.x)
        kns.append(abs(inv.curvature.KN))
        nodes.append((u, v))
    center, radius, deviation = fit_hypersphere(np.array(points))
    max_kn = float(max(kns))
    hypersphere = deviation <= tol
    flat = max_kn <= tol
    if flat:
        verdict = "flat-normal-bundle"
    elif hypersphere:
        verdict = "minimal-in-hypersphere"
    else:
        verdict = "counterexample"
        _logger.warning("Neither branch of the dichotomy holds on %s: max |K_N| = %.3e", base.name, max_kn)
    worst = nodes[int(np.argmax(kns))]
    return ChenResult(verdict, hypersphere, flat, [float(c) for c in center], radius, deviation, max_kn, worst, hp)
