"""Normal transport surfaces x~ = x + f1 N1 + f2 N2"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from e4surf.frame.frame import FrameFunction, NormalFrame, Torsion, frame_function
from e4surf.invariants.invariants import WeingartenForms
from e4surf.patch.patch import FD_STEP, Jet2, SampledSurface, SurfacePatch
from e4surf.transport.offsets import OffsetField
from e4surf.utils.grid import GridSpec
from e4surf.utils.numeric import derivative

_logger: logging.Logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-10


class TransportSurface:
    """Base patch transported along its normal frame by an offset field"""

    def __init__(self, base: SurfacePatch, frame: FrameFunction, offsets: OffsetField) -> None:
        self.base = base
        self.frame = frame
        self.offsets = offsets

    @property
    def name(self) -> str:
        return f"{self.base.name}+{self.offsets.kind}"

    def position(self, u: float, v: float) -> np.ndarray:
        f = self.frame(u, v)
        f1, f2 = self.offsets.values(u, v)
        return self.base.position(u, v) + f1 * f.n1 + f2 * f.n2

    def tangents(self, u: float, v: float, h: float = FD_STEP) -> Tuple[np.ndarray, np.ndarray]:
        """Direct tangents: finite differences of the composed map, one-sided at the domain edge"""
        d = self.base.domain
        xu = derivative(lambda t: self.position(t, v), u, h, d.u_min, d.u_max)
        xv = derivative(lambda t: self.position(u, t), v, h, d.v_min, d.v_max)
        return xu, xv

    def as_patch(self) -> SampledSurface:
        """The transport as a patch of its own, with finite-difference jets"""
        return SampledSurface(self.name, self.position, self.base.domain)


def transport_surface(
    base: SurfacePatch, off: OffsetField, frame: Optional[FrameFunction] = None
) -> TransportSurface:
    return TransportSurface(base, frame or frame_function(base), off)


def transport_tangents(
    j: Jet2,
    f: NormalFrame,
    w: WeingartenForms,
    t: Torsion,
    values: np.ndarray,
    derivatives: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """Tangents of the transport expanded in the base frame

    x~_{u^i} = x_{u^i} - sum_k (f1 c_1^{ik} + f2 c_2^{ik}) x_{u^k}
               + ((f1)_{u^i} - f2 T_i) N1 + ((f2)_{u^i} + f1 T_i) N2

    Args:
        j (Jet2): Base jet
        f (NormalFrame): Frame at the same point
        w (WeingartenForms): Weingarten forms in that frame
        t (Torsion): Torsion coefficients of that frame
        values (np.ndarray): (f1, f2)
        derivatives (np.ndarray): Offset partials, row alpha holds ((f_alpha)_u, (f_alpha)_v)

    Returns:
        tuple: x~_u, x~_v
    """
    f1, f2 = float(values[0]), float(values[1])
    tangents = (j.xu, j.xv)
    result = []
    for i in range(2):
        xt = tangents[i].astype(float)
        for k in range(2):
            xt = xt - (f1 * w.w[0, i, k] + f2 * w.w[1, i, k]) * tangents[k]
        ti = t.component(i)
        xt = xt + (derivatives[0, i] - f2 * ti) * f.n1 + (derivatives[1, i] + f1 * ti) * f.n2
        result.append(xt)
    return result[0], result[1]


@dataclass
class RegularityReport:
    surface: str
    offsets: Dict[str, Any]
    grid: GridSpec
    gram: np.ndarray
    threshold: float = DEGENERACY_TOL
    degenerate_nodes: List[Tuple[float, float]] = field(default_factory=list)

    @property
    def degenerate_count(self) -> int:
        return len(self.degenerate_nodes)

    @property
    def degenerate_fraction(self) -> float:
        return self.degenerate_count / self.grid.size

    @property
    def degenerate(self) -> bool:
        return self.degenerate_count > 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "surface": self.surface,
            "offsets": self.offsets,
            "grid": self.grid.to_dict(),
            "threshold": self.threshold,
            "nodes": self.grid.size,
            "degenerate_count": self.degenerate_count,
            "degenerate_fraction": self.degenerate_fraction,
            "gram_min": float(self.gram.min()),
            "gram_max": float(self.gram.max()),
            "degenerate_nodes": [{"u": u, "v": v} for u, v in self.degenerate_nodes[:100]],
        }


def regularity_report(ts: TransportSurface, grid: GridSpec, threshold: float = DEGENERACY_TOL) -> RegularityReport:
    """Gram determinant of the direct transport tangents at every node

    Args:
        ts (TransportSurface): Transport
        grid (GridSpec): Grid
        threshold (float): Nodes with Gram determinant at or below it are degenerate

    Returns:
        RegularityReport: Per-node Gram determinants and degenerate nodes
    """
    report = RegularityReport(ts.base.name, ts.offsets.describe(), grid, np.zeros((grid.nu, grid.nv)), threshold)
    for i, j, u, v in grid.nodes():
        xu, xv = ts.tangents(u, v)
        gram = float((xu @ xu) * (xv @ xv) - (xu @ xv) ** 2)
        report.gram[i, j] = gram
        if gram <= threshold:
            report.degenerate_nodes.append((u, v))
    if report.degenerate:
        _logger.info("Transport %s is degenerate at %d of %d nodes", ts.name, report.degenerate_count, grid.size)
    return report
